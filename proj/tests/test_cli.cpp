#include "pellcrit/cli.hpp"

#include <gtest/gtest.h>

#include "json.hpp"

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

using namespace pellcrit;
using nlohmann::json;

namespace {

struct Result {
    int code;
    std::string out, err;
};

Result call(const std::vector<std::string>& args) {
    std::ostringstream out, err;
    int code = run(args, out, err);
    return {code, out.str(), err.str()};
}

std::vector<json> lines(const std::string& s) {
    std::vector<json> out;
    std::istringstream in(s);
    for (std::string line; std::getline(in, line);)
        if (!line.empty()) out.push_back(json::parse(line));
    return out;
}

std::multiset<std::string> as_set(const std::vector<json>& recs) {
    std::multiset<std::string> s;
    for (const json& r : recs) s.insert(r.dump());
    return s;
}

std::string temp_path(const std::string& name) {
    return (std::filesystem::temp_directory_path() / ("pellcrit_" + name)).string();
}

}  // namespace

TEST(Cli, Decide) {
    Result r = call({"decide", "221", "17"});
    ASSERT_EQ(r.code, kExitOk) << r.err;
    auto recs = lines(r.out);
    ASSERT_EQ(recs.size(), 1u);
    EXPECT_EQ(recs[0]["D"], 221);
    EXPECT_EQ(recs[0]["n"], 17);
    EXPECT_EQ(recs[0]["status"], "solvable");
    EXPECT_EQ(recs[0]["witness"], json({119, 8}));

    r = call({"decide", "82", "2"});
    ASSERT_EQ(r.code, kExitOk) << r.err;
    recs = lines(r.out);
    EXPECT_EQ(recs[0]["status"], "unsolvable");
    EXPECT_EQ(recs[0]["provenance"], "d9mod16-obstruction");
    EXPECT_FALSE(recs[0].contains("witness"));
}

TEST(Cli, DecideWitnessSolves) {
    for (const auto& [D, n] : std::vector<std::pair<long, long>>{{34, 33}, {146, -2}, {305, 5}, {7, -3}, {226, -1}}) {
        Result r = call({"decide", std::to_string(D), std::to_string(n)});
        ASSERT_EQ(r.code, kExitOk) << r.err;
        json rec = lines(r.out).at(0);
        if (rec["status"] != "solvable") continue;
        long x = rec["witness"][0], y = rec["witness"][1];
        EXPECT_EQ(x * x - D * y * y, n) << D << " " << n;
    }
}

TEST(Cli, Classify) {
    Result r = call({"classify-2p", "113"});
    ASSERT_EQ(r.code, kExitOk) << r.err;
    json rec = lines(r.out).at(0);
    EXPECT_EQ(rec["p"], 113);
    EXPECT_EQ(rec["target"], -1);
    EXPECT_EQ(rec["provenance"], "oracle");
    EXPECT_EQ(rec["witness"], json({15, 1}));
    EXPECT_EQ(15 * 15 - 226, -1);

    r = call({"classify-pq", "17", "13"});
    ASSERT_EQ(r.code, kExitOk) << r.err;
    rec = lines(r.out).at(0);
    EXPECT_EQ(rec["target"], 17);
    EXPECT_EQ(rec["witness"], json({119, 8}));
}

TEST(Cli, UsageErrors) {
    const std::vector<std::vector<std::string>> bad{
        {},
        {"frobnicate"},
        {"decide", "221"},
        {"decide", "221", "abc"},
        {"decide", "221", "0"},
        {"decide", "49", "3"},
        {"classify-2p", "21"},
        {"classify-pq", "13", "13"},
        {"scan", "--family", "3p", "--max", "10"},
        {"scan", "--family", "2p"},
        {"scan", "--family", "2p", "--max", "-4"},
        {"table", "--format", "xml", "--out", "x"},
    };
    for (const auto& args : bad) {
        Result r = call(args);
        EXPECT_EQ(r.code, kExitUsage) << (args.empty() ? "" : args[0]);
        EXPECT_NE(r.err.find("usage error"), std::string::npos);
        EXPECT_TRUE(r.out.empty());
    }
    Result r = call({"scan", "--family", "3p", "--max", "10"});
    EXPECT_NE(r.err.find("--family"), std::string::npos) << r.err;
}

TEST(Cli, Help) {
    Result r = call({"--help"});
    EXPECT_EQ(r.code, kExitOk);
    EXPECT_NE(r.out.find("decide"), std::string::npos);
}

TEST(Cli, ScanJobsIdentical) {
    for (const std::string fam : {"2p", "221", "pq"}) {
        const std::string max = fam == "221" ? "300" : fam == "pq" ? "400" : "1500";
        Result a = call({"scan", "--family", fam, "--max", max});
        Result b = call({"scan", "--family", fam, "--max", max, "--jobs", "4"});
        ASSERT_EQ(a.code, kExitOk) << a.err;
        ASSERT_EQ(b.code, kExitOk) << b.err;
        auto ra = lines(a.out);
        EXPECT_FALSE(ra.empty());
        EXPECT_EQ(as_set(ra), as_set(lines(b.out))) << fam;
    }
}

TEST(Cli, Scan221Count) {
    Result r = call({"scan", "--family", "221", "--max", "50"});
    ASSERT_EQ(r.code, kExitOk) << r.err;
    auto recs = lines(r.out);
    EXPECT_EQ(recs.size(), 100u);
    for (const json& rec : recs) {
        if (rec["status"] != "solvable") continue;
        long x = rec["witness"][0], y = rec["witness"][1], n = rec["n"];
        EXPECT_EQ(x * x - 221 * y * y, n);
    }
}

TEST(Cli, VerifyLemmas) {
    Result r = call({"verify-lemmas", "--family", "2d", "--max", "400"});
    ASSERT_EQ(r.code, kExitOk) << r.err;
    auto recs = lines(r.out);
    ASSERT_FALSE(recs.empty());
    bool saw34 = false;
    for (const json& rec : recs) {
        EXPECT_TRUE(rec["ok"].get<bool>());
        EXPECT_EQ(rec["engine"], rec["closed_form"]);
        long x = rec["theta"][0], y = rec["theta"][1], z = rec["theta"][2], D = rec["D"];
        EXPECT_EQ(x * x - D * y * y, 2 * z * z) << D;
        if (D == 34) saw34 = true;
    }
    EXPECT_TRUE(saw34);
}

TEST(Cli, TableJsonRoundTrip) {
    const std::string path = temp_path("table.jsonl");
    Result r = call({"table", "--format", "json", "--out", path, "--family", "2p", "--max", "500"});
    ASSERT_EQ(r.code, kExitOk) << r.err;
    std::ifstream in(path);
    std::stringstream buf;
    buf << in.rdbuf();
    auto recs = lines(buf.str());
    ASSERT_FALSE(recs.empty());
    for (const json& rec : recs) EXPECT_EQ(json::parse(rec.dump()), rec);
    Result s = call({"scan", "--family", "2p", "--max", "500"});
    EXPECT_EQ(as_set(recs), as_set(lines(s.out)));
    std::remove(path.c_str());
}

TEST(Cli, TableCsv) {
    const std::string path = temp_path("table.csv");
    Result r = call({"table", "--format", "csv", "--out", path, "--family", "2p", "--max", "200"});
    ASSERT_EQ(r.code, kExitOk) << r.err;
    std::ifstream in(path);
    std::string header;
    std::getline(in, header);
    EXPECT_NE(header.find("target"), std::string::npos);
    EXPECT_NE(header.find("witness_0"), std::string::npos);
    const auto columns = std::count(header.begin(), header.end(), ',');
    std::size_t rows = 0;
    for (std::string line; std::getline(in, line);) {
        ++rows;
        EXPECT_EQ(std::count(line.begin(), line.end(), ','), columns) << line;
    }
    // odd primes up to 200
    EXPECT_EQ(rows, 45u);
    std::remove(path.c_str());
}

TEST(Cli, TableUnwritablePath) {
    Result r = call({"table", "--format", "json", "--out", "/nonexistent/dir/t.json", "--max", "10"});
    EXPECT_EQ(r.code, kExitUsage);
    EXPECT_NE(r.err.find("--out"), std::string::npos);
}
