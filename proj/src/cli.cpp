#include "pellcrit/cli.hpp"

#include "pellcrit/artin.hpp"
#include "pellcrit/criteria.hpp"
#include "pellcrit/localanalysis.hpp"
#include "pellcrit/pellsolver.hpp"
#include "pellcrit/quadring.hpp"
#include "pellcrit/symbols.hpp"

#include "CLI11.hpp"
#include "json.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <mutex>
#include <set>
#include <thread>

namespace pellcrit {

namespace {

using nlohmann::json;

struct Inconsistent : std::runtime_error {
    using std::runtime_error::runtime_error;
};

json num(const Int& x) {
    if (x.fits_slong_p()) return x.get_si();
    return x.get_str();
}

Int parse_int(const std::string& s, const char* what) {
    try {
        return Int(s);
    } catch (const std::invalid_argument&) {
        throw CLI::ValidationError(what, "not an integer: " + s);
    }
}

void put_verdict(json& rec, const Verdict& v) {
    rec["status"] = to_string(v.status);
    if (v.witness) rec["witness"] = {num(v.witness->first), num(v.witness->second)};
    rec["provenance"] = v.provenance;
    if (v.reason != Reason::None) rec["reason"] = to_string(v.reason);
    if (v.reason == Reason::LocalObstruction) rec["prime"] = num(v.obstruction_prime);
}

std::string instance(const Int& D, const Int& n) { return "D=" + D.get_str() + " n=" + n.get_str(); }

// Closed-form or Artin decision for one instance, falling back to the oracle.
Verdict criteria_decide(const Int& D, const Int& n) {
    if (mod(D, 2) == 0)
        if (auto v = prop_checks(D / 2, n)) return *v;
    if (D == 221) return decide_221(n);
    if (classify_order(D).family != QuadOrderInfo::Family::Other) return joint_artin_decide(D, n);
    Verdict v = solve(D, n);
    v.provenance = "oracle";
    return v;
}

json decide_record(const Int& D, const Int& n, bool timed) {
    auto t0 = std::chrono::steady_clock::now();
    Verdict c = criteria_decide(D, n);
    Verdict o = solve(D, n);
    if (c.status != o.status)
        throw Inconsistent("criteria say " + to_string(c.status) + ", oracle says " + to_string(o.status) + " for " +
                           instance(D, n));
    if (c.solvable() && !c.witness) c.witness = o.witness;
    json rec;
    rec["D"] = num(D);
    rec["n"] = num(n);
    put_verdict(rec, c);
    if (timed)
        rec["ms"] = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    return rec;
}

// Record for a classification; the oracle must find exactly the target solvable.
json classification_record(const Classification& c, const Int& D, const std::vector<Int>& targets) {
    json rec;
    rec["target"] = c.target ? num(*c.target) : json(nullptr);
    rec["provenance"] = c.verdict.provenance;
    if (c.verdict.witness) rec["witness"] = {num(c.verdict.witness->first), num(c.verdict.witness->second)};
    for (const Int& t : targets) {
        bool solvable = solve(D, t).solvable();
        bool named = c.target && *c.target == t;
        if (solvable != named)
            throw Inconsistent("classification names " + (c.target ? c.target->get_str() : std::string("none")) +
                               " but the oracle disagrees at " + instance(D, t));
    }
    return rec;
}

json pq_record(const Int& p, const Int& q) {
    json rec = classification_record(classify_pq(p, q), p * q, {-1, p, q});
    rec["p"] = num(p);
    rec["q"] = num(q);
    return rec;
}

json twop_record(const Int& p) {
    json rec = classification_record(classify_2p(p), 2 * p, {-1, 2, -2});
    rec["p"] = num(p);
    return rec;
}

json table_json(const CharacterTable& t) {
    return {{"1", t.chi_1}, {"-1", t.chi_neg1}, {"2", t.chi_2}, {"-2", t.chi_neg2}};
}

json lemma_record(const Int& D) {
    ThetaData theta = find_theta_data(D, 2);
    CharacterTable engine = theta_character(D, theta);
    CharacterTable closed = theta_character_closed_form(D);
    bool ok = engine == closed && engine.chi_1 == 1 && engine.chi_neg2 == engine.chi_neg1 * engine.chi_2;
    if (has_pm3_two_squares(D) && engine.chi_neg1 != -1) ok = false;
    json rec;
    rec["D"] = num(D);
    rec["theta"] = {num(theta.x0), num(theta.y0), num(theta.z0)};
    rec["engine"] = table_json(engine);
    rec["closed_form"] = table_json(closed);
    rec["ok"] = ok;
    if (!ok) throw Inconsistent("character table mismatch for D=" + D.get_str());
    return rec;
}

using Job = std::function<json()>;

std::vector<Job> family_jobs(const std::string& family, long max) {
    std::vector<Job> jobs;
    if (family == "pq") {
        std::vector<Int> primes;
        for (long p = 5; p <= max; p += 4)
            if (is_prime(p)) primes.push_back(p);
        for (std::size_t i = 0; i < primes.size(); ++i)
            for (std::size_t j = i + 1; j < primes.size(); ++j) {
                const Int p = primes[i], q = primes[j];
                if (jacobi(q, p) != 1 || quartic_residue(p, q) * quartic_residue(q, p) != -1) continue;
                jobs.push_back([p, q] { return pq_record(p, q); });
            }
    } else if (family == "2p") {
        for (long p = 3; p <= max; p += 2)
            if (is_prime(p)) jobs.push_back([p] { return twop_record(p); });
    } else if (family == "221") {
        for (long n = -max; n <= max; ++n)
            if (n != 0) jobs.push_back([n] { return decide_record(221, n, false); });
    } else if (family == "2d") {
        for (long d = 1; d <= max; ++d) {
            Int D = 2 * d;
            if (is_square(D) || classify_order(D).family != QuadOrderInfo::Family::TwoD) continue;
            jobs.push_back([D] { return lemma_record(D); });
        }
    }
    return jobs;
}

struct JobResults {
    std::vector<json> records;
    std::vector<std::string> errors;
};

JobResults run_jobs(const std::vector<Job>& jobs, unsigned threads) {
    std::vector<json> slots(jobs.size());
    std::vector<std::string> errs(jobs.size());
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i; (i = next++) < jobs.size();) {
            try {
                slots[i] = jobs[i]();
            } catch (const Inconsistent& e) {
                errs[i] = e.what();
            }
        }
    };
    std::vector<std::thread> pool;
    for (unsigned t = 1; t < std::max(1u, threads); ++t) pool.emplace_back(worker);
    worker();
    for (auto& th : pool) th.join();
    JobResults r;
    for (std::size_t i = 0; i < jobs.size(); ++i) {
        if (!errs[i].empty()) r.errors.push_back(errs[i]);
        else r.records.push_back(std::move(slots[i]));
    }
    return r;
}

std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string q = "\"";
    for (char c : s) q += c == '"' ? std::string("\"\"") : std::string(1, c);
    return q + "\"";
}

// Flattens arrays into key_0, key_1, ...
std::map<std::string, std::string> flatten(const json& rec) {
    std::map<std::string, std::string> row;
    for (auto it = rec.begin(); it != rec.end(); ++it) {
        if (it->is_array()) {
            for (std::size_t i = 0; i < it->size(); ++i) row[it.key() + "_" + std::to_string(i)] = (*it)[i].dump();
        } else if (it->is_string()) {
            row[it.key()] = it->get<std::string>();
        } else {
            row[it.key()] = it->dump();
        }
    }
    return row;
}

void write_csv(std::ostream& os, const std::vector<json>& records) {
    std::vector<std::map<std::string, std::string>> rows;
    std::set<std::string> columns;
    for (const json& r : records) {
        rows.push_back(flatten(r));
        for (const auto& [k, v] : rows.back()) columns.insert(k);
    }
    bool first = true;
    for (const auto& c : columns) os << (first ? "" : ",") << csv_field(c), first = false;
    os << "\n";
    for (const auto& row : rows) {
        first = true;
        for (const auto& c : columns) {
            auto it = row.find(c);
            os << (first ? "" : ",") << (it == row.end() ? "" : csv_field(it->second));
            first = false;
        }
        os << "\n";
    }
}

int report(const JobResults& r, std::ostream& out, std::ostream& err) {
    for (const json& rec : r.records) out << rec.dump() << "\n";
    for (const auto& e : r.errors) err << "inconsistent: " << e << "\n";
    return r.errors.empty() ? kExitOk : kExitInconsistent;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Decide solvability of x^2 - D y^2 = n", "pellcrit"};
    app.require_subcommand(1);

    std::string sD, sn, sp, sq, family, format, path;
    long max = 0;
    unsigned jobs = 1;

    auto* decide = app.add_subcommand("decide", "Decide one instance; criteria are checked against the oracle");
    decide->add_option("D", sD)->required();
    decide->add_option("n", sn)->required();

    auto* cpq = app.add_subcommand("classify-pq", "Which of -1, p, q is a norm from Z[sqrt pq]");
    cpq->add_option("p", sp)->required();
    cpq->add_option("q", sq)->required();

    auto* c2p = app.add_subcommand("classify-2p", "Which of -1, 2, -2 is a norm from Z[sqrt 2p]");
    c2p->add_option("p", sp)->required();

    auto* scan = app.add_subcommand("scan", "Criteria against the oracle over a family");
    scan->add_option("--family", family)->required()->check(CLI::IsMember({"pq", "2p", "221"}));
    scan->add_option("--max", max)->required()->check(CLI::PositiveNumber);
    scan->add_option("--jobs", jobs)->check(CLI::PositiveNumber);

    auto* lemmas = app.add_subcommand("verify-lemmas", "Character tables at 2 through the Hilbert-symbol engine");
    lemmas->add_option("--family", family)->required()->check(CLI::IsMember({"2d"}));
    lemmas->add_option("--max", max)->required()->check(CLI::PositiveNumber);
    lemmas->add_option("--jobs", jobs)->check(CLI::PositiveNumber);

    auto* table = app.add_subcommand("table", "Write scan records to a file");
    table->add_option("--format", format)->required()->check(CLI::IsMember({"json", "csv"}));
    table->add_option("--out", path)->required();
    table->add_option("--family", family)->check(CLI::IsMember({"pq", "2p", "221"}))->capture_default_str();
    table->add_option("--max", max)->check(CLI::PositiveNumber);
    table->add_option("--jobs", jobs)->check(CLI::PositiveNumber);

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) {
            out << app.help();
            return kExitOk;
        }
        err << "usage error: " << e.what() << "\n";
        return kExitUsage;
    }

    try {
        if (decide->parsed()) {
            Int D = parse_int(sD, "D"), n = parse_int(sn, "n");
            out << decide_record(D, n, true).dump() << "\n";
        } else if (cpq->parsed()) {
            out << pq_record(parse_int(sp, "p"), parse_int(sq, "q")).dump() << "\n";
        } else if (c2p->parsed()) {
            out << twop_record(parse_int(sp, "p")).dump() << "\n";
        } else if (scan->parsed()) {
            return report(run_jobs(family_jobs(family, max), jobs), out, err);
        } else if (lemmas->parsed()) {
            return report(run_jobs(family_jobs(family, max), jobs), out, err);
        } else if (table->parsed()) {
            if (family.empty()) family = "2p";
            if (max == 0) max = 1000;
            JobResults r = run_jobs(family_jobs(family, max), jobs);
            std::ofstream file(path);
            if (!file) {
                err << "usage error: --out: cannot open " << path << "\n";
                return kExitUsage;
            }
            if (format == "json") {
                for (const json& rec : r.records) file << rec.dump() << "\n";
            } else {
                write_csv(file, r.records);
            }
            for (const auto& e : r.errors) err << "inconsistent: " << e << "\n";
            return r.errors.empty() ? kExitOk : kExitInconsistent;
        }
    } catch (const CLI::ValidationError& e) {
        err << "usage error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const Inconsistent& e) {
        err << "inconsistent: " << e.what() << "\n";
        return kExitInconsistent;
    } catch (const std::invalid_argument& e) {
        err << "usage error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::logic_error& e) {
        err << "inconsistent: " << e.what() << "\n";
        return kExitInconsistent;
    }
    return kExitOk;
}

}  // namespace pellcrit
