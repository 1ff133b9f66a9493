//  Copyright 2026 The bohrspec Authors
//
//  Licensed under the Apache License, Version 2.0 (the "License");
//  you may not use this file except in compliance with the License.
//  You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
//  Unless required by applicable law or agreed to in writing, software
//  distributed under the License is distributed on an "AS IS" BASIS,
//  WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
//  See the License for the specific language governing permissions and
//  limitations under the License.

#include <array>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#include <sys/wait.h>

#include <gtest/gtest.h>

#include "bohrspec/fixtures.hpp"
#include "bohrspec/json_io.hpp"

using namespace bohrspec;

namespace {

struct Run {
  int status = -1;
  std::string out;
  std::string err;
};

std::string fixture(const std::string& name) { return std::string(BOHRSPEC_FIXTURES) + "/" + name; }

Run run(const std::string& args, const std::string& env = {}) {
  const std::string err_file = ::testing::TempDir() + "bohrspec_cli_stderr.txt";
  const std::string cmd = env + (env.empty() ? "" : " ") + std::string(BOHRSPEC_CLI) + " " + args + " 2>" + err_file;
  Run r;
  FILE* p = popen(cmd.c_str(), "r");
  if (!p) return r;
  std::array<char, 4096> buf{};
  std::size_t n = 0;
  while ((n = fread(buf.data(), 1, buf.size(), p)) > 0) r.out.append(buf.data(), n);
  const int st = pclose(p);
  r.status = WIFEXITED(st) ? WEXITSTATUS(st) : -1;
  std::ifstream in(err_file);
  std::stringstream ss;
  ss << in.rdbuf();
  r.err = ss.str();
  return r;
}

}  // namespace

TEST(Cli, BohrTwoPoints) {
  const auto r = run("bohr --n 2 points");
  ASSERT_EQ(r.status, 0) << r.err;
  const auto j = io::json::parse(r.out);
  EXPECT_EQ(j["count"], 3);
  EXPECT_EQ(j["points"].size(), 3u);
  EXPECT_EQ(j["points"][0]["ideal"]["top"], "1,2");
}

TEST(Cli, AbsorptionQuery) {
  const auto r = run("lattice --present " + fixture("free2.json") + " --query \"(g1 & g2) v g1 <= g1\"");
  EXPECT_EQ(r.status, 0);
  EXPECT_EQ(r.out, "true\n");
  const auto f = run("lattice --present " + fixture("free2.json") + " --query \"g1 <= g1 & g2\"");
  EXPECT_EQ(f.out, "false\n");
  const auto e = run("lattice --present " + fixture("boolean2.json") + " --query \"g1 & g2 = F\"");
  EXPECT_EQ(e.out, "true\n");
}

TEST(Cli, VerifyAllPasses) {
  const auto r = run("verify --suite all");
  EXPECT_EQ(r.status, 0) << r.out;
  EXPECT_EQ(r.out.find("FAIL"), std::string::npos);
  const auto j = run("verify --suite aqft --format json");
  ASSERT_EQ(j.status, 0);
  EXPECT_EQ(io::json::parse(j.out)["failed"], 0);
}

TEST(Cli, ViewsOfShippedInputs) {
  EXPECT_EQ(io::json::parse(run("diagram " + fixture("two_context.json") + " opens").out)["count"], 5);
  EXPECT_EQ(io::json::parse(run("diagram " + fixture("two_context.json") + " sier").out)["count"], 6);
  EXPECT_EQ(io::json::parse(run("bohr --spec " + fixture("bohr3.json")).out)["count"], 10);
  EXPECT_EQ(io::json::parse(run("bohr --spec " + fixture("m2_contexts.json")).out)["count"], 5);
  const auto frame = io::json::parse(run("bohr --n 2 frame").out);
  EXPECT_EQ(frame["sizes"]["1,2"], 5);
  EXPECT_EQ(frame["sizes"]["1|2"], 4);
  for (const char* net : {"net_single_region.json", "net_chain_trivial.json", "net_chain_bohr2.json",
                          "net_chain_refined.json", "net_vee.json"}) {
    const auto r = run("aqft " + fixture(net) + " check");
    EXPECT_EQ(r.status, 0) << net;
    EXPECT_EQ(io::json::parse(r.out)["ok"], true) << net;
  }
  EXPECT_EQ(run("bohr --n 3 opfibration").status, 0);
  EXPECT_EQ(run("bohr --n 3 cstar").status, 0);
}

TEST(Cli, DotExport) {
  const auto pts = run("export --n 2");
  ASSERT_EQ(pts.status, 0);
  EXPECT_EQ(pts.out.rfind("digraph \"points\"", 0), 0u);
  EXPECT_NE(pts.out.find("n0 -> n1;"), std::string::npos);
  const auto ctx = run("export --diagram " + fixture("two_context.json") + " --graph contexts");
  EXPECT_NE(ctx.out.find("label=\"C1\""), std::string::npos);
  EXPECT_NE(ctx.out.find("n0 -> n1;"), std::string::npos);
}

TEST(Cli, ErrorsAreStructured) {
  const auto missing = run("diagram /nonexistent/file.json");
  EXPECT_EQ(missing.status, 1);
  EXPECT_EQ(io::json::parse(missing.err)["error"]["kind"], "Schema");
  const auto big = run("bohr --n 9");
  EXPECT_EQ(big.status, 1);
  EXPECT_EQ(io::json::parse(big.err)["error"]["kind"], "TooLarge");
  const auto usage = run("nonsense");
  EXPECT_EQ(usage.status, 1);
  EXPECT_EQ(io::json::parse(usage.err)["error"]["kind"], "Usage");
  const auto unknown = run("lattice --present " + fixture("free2.json") + " --query \"g7 <= g1\"");
  EXPECT_EQ(unknown.status, 1);
  EXPECT_EQ(io::json::parse(unknown.err)["error"]["kind"], "UnknownGenerator");
  const auto parse = run("lattice --present " + fixture("free2.json") + " --query \"g1 <=\"");
  EXPECT_EQ(io::json::parse(parse.err)["error"]["kind"], "ParseError");
}

TEST(Cli, SchemaErrorsNamePath) {
  const std::string bad = ::testing::TempDir() + "bohrspec_bad_diagram.json";
  std::ofstream(bad) << R"({"poset": {"elements": ["a", "b"], "le": [["a", "b"]]},
    "algebras": {"a": {"outcomes": ["x"]}, "b": {"outcomes": ["y", "z"]}},
    "inclusions": {"a<=b": {"outcome_map": {"y": "x", "z": "w"}}}})";
  const auto r = run("diagram " + bad);
  EXPECT_EQ(r.status, 1);
  const auto e = io::json::parse(r.err)["error"];
  EXPECT_EQ(e["kind"], "InvalidDiagram");
  EXPECT_NE(e["path"].get<std::string>().find("/inclusions"), std::string::npos);
}

TEST(Cli, OutputIndependentOfThreadCount) {
  for (const std::string args : {"verify --suite all", "bohr --n 4 points", "bohr --n 3 sier"}) {
    const auto one = run(args, "BOHRSPEC_THREADS=1");
    const auto four = run(args, "BOHRSPEC_THREADS=4");
    EXPECT_EQ(one.status, 0);
    EXPECT_EQ(one.out, four.out) << args;
    EXPECT_EQ(one.out, run(args).out) << args;
  }
}

// Shipped JSON inputs describe the same objects as the built-in fixtures.
TEST(Fixtures, JsonMatchesBuiltins) {
  const auto two = io::diagram_from_json(io::read_json_file(fixture("two_context.json")));
  const auto ref = fixtures::two_context();
  EXPECT_EQ(two.poset().labels(), ref.poset().labels());
  EXPECT_EQ(external_points(two), external_points(ref));
  EXPECT_EQ(two.inclusion(0, 1).outcome_map(), ref.inclusion(0, 1).outcome_map());
  const auto m2 = io::bohr_from_json(io::read_json_file(fixture("m2_contexts.json")));
  EXPECT_EQ(m2.diagram.poset().labels(), fixtures::m2_contexts().diagram.poset().labels());
  EXPECT_EQ(io::bohr_from_json(io::read_json_file(fixture("bohr3.json"))).diagram.poset().labels(),
            full_context_poset(3).diagram.poset().labels());
  const auto p = io::presentation_from_json(io::read_json_file(fixture("boolean2.json")));
  EXPECT_EQ(present(p).lattice()->size(), present(fixtures::boolean2()).lattice()->size());
  const std::vector<std::pair<std::string, std::string>> nets{{"single-region", "net_single_region.json"},
                                                              {"chain-trivial", "net_chain_trivial.json"},
                                                              {"chain-bohr2", "net_chain_bohr2.json"},
                                                              {"chain-refined", "net_chain_refined.json"},
                                                              {"vee", "net_vee.json"}};
  for (const auto& [name, file] : nets) {
    const Net from_json(io::net_from_json(io::read_json_file(fixture(file))));
    for (const auto& [n2, builtin] : fixtures::shipped_nets()) {
      if (n2 != name) continue;
      EXPECT_EQ(from_json.P().labels(), builtin.P().labels()) << name;
      EXPECT_EQ(aqft_points(from_json, build_P(from_json)), aqft_points(builtin, build_P(builtin))) << name;
    }
  }
}
