// Workspace loading, canonical JSON, the verify suite and the CLI binary.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sys/wait.h>

#include <gtest/gtest.h>

#include "bicotrace/verify.hpp"

using namespace bicotrace;
using Q = Rational;
namespace fs = std::filesystem;

namespace {

const Field kQ = Field::rationals();

struct CliRun {
  int code;
  std::string out;
};

CliRun cli(const std::string& args) {
  std::string cmd = std::string(BICOTRACE_CLI) + " " + args + " 2>/dev/null";
  FILE* p = popen(cmd.c_str(), "r");
  std::string out;
  char buf[4096];
  while (std::size_t n = std::fread(buf, 1, sizeof buf, p)) out.append(buf, n);
  int status = pclose(p);
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

fs::path scratch(const std::string& name, const std::string& text) {
  fs::path dir = fs::temp_directory_path() / "bicotrace_tests";
  fs::create_directories(dir);
  fs::path p = dir / name;
  std::ofstream(p) << text;
  return p;
}

std::string corpus(const std::string& file) { return std::string(BICOTRACE_CORPUS) + "/" + file; }

}  // namespace

// ---------------------------------------------------------------------------
// JSON

TEST(Json, ScalarsReadIntegersAndFractions) {
  EXPECT_EQ(to_string(scalar_from_json<Q>(kQ, Json(3))), "3/1");
  EXPECT_EQ(to_string(scalar_from_json<Q>(kQ, Json("-2/4"))), "-1/2");
  EXPECT_THROW(scalar_from_json<Q>(kQ, Json(1.5)), Error);
}

TEST(Json, MatrixRoundTripIsByteIdentical) {
  Mat<Q> m = Mat<Q>::from_ints(kQ, {{1, -2}, {0, 7}});
  m(0, 0) = Q(1) / Q(3);
  const std::string text = canonical_dump(result_json(m, {{"kind", "test"}}));
  Json back = parse_json_text(text, "test");
  EXPECT_EQ(canonical_dump(back), text);
  EXPECT_EQ(matrix_from_json<Q>(kQ, back.at("value")), m);
  EXPECT_EQ(back.at("domain_dim"), 2);
  EXPECT_EQ(back.at("value")[0][0], "1/3");
}

TEST(Json, RaggedMatrixIsRejected) {
  EXPECT_THROW(matrix_from_json<Q>(kQ, Json::parse("[[1,2],[3]]")), Error);
}

// ---------------------------------------------------------------------------
// workspaces

TEST(Workspace, CorpusFilesResolveCleanly) {
  for (const auto& ent : fs::directory_iterator(BICOTRACE_CORPUS)) {
    Json doc = read_json_file(ent.path().string());
    if (!doc.contains("expect")) continue;
    Field f = workspace_field(doc);
    with_field(f, [&]<class K>() {
      Workspace<K> ws(doc, f);
      EXPECT_TRUE(ws.check_all().empty()) << ent.path();
    });
  }
}

TEST(Workspace, DanglingReferenceIsNamed) {
  Json doc = Json::parse(R"({"algebras":{"k":{"ground":true}},"bimodules":{"T":{"tensor":["A","B"]}}})");
  Workspace<Q> ws(doc, kQ);
  auto errors = ws.check_all();
  ASSERT_EQ(errors.size(), 1u);
  EXPECT_NE(errors[0].find("Reference"), std::string::npos);
  EXPECT_NE(errors[0].find("bimodules.T"), std::string::npos);
  EXPECT_NE(errors[0].find("unknown bimodules entry"), std::string::npos);
}

TEST(Workspace, CircularReferenceIsCaught) {
  Json doc = Json::parse(R"({"bimodules":{"A":{"tensor":["B","B"]},"B":{"tensor":["A","A"]}}})");
  Workspace<Q> ws(doc, kQ);
  try {
    ws.bimodule("A");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::Reference);
  }
}

TEST(Workspace, DoctoredAssociativityListsIndices) {
  // e, a, b with a a = b and b a = b, everything else through the unit
  Json doc = Json::parse(R"({"algebras":{"A":{"dim":3,"unit":[1,0,0],"mul":[
    [[1,0,0],[0,1,0],[0,0,1]],
    [[0,1,0],[0,0,1],[0,0,0]],
    [[0,0,1],[0,0,1],[0,0,0]]]}}})");
  Workspace<Q> ws(doc, kQ);
  auto errors = ws.check_all();
  ASSERT_EQ(errors.size(), 1u);
  EXPECT_NE(errors[0].find("AssociativityViolation"), std::string::npos);
  EXPECT_NE(errors[0].find("[indices"), std::string::npos);
}

TEST(Workspace, FieldOverrideChangesArithmetic) {
  Json doc = Json::parse(R"({"field":"Q","groups":{"C2":{"cyclic":2}}})");
  EXPECT_EQ(workspace_field(doc, "F2").characteristic(), 2u);
  EXPECT_EQ(workspace_field(doc).characteristic(), 0u);
}

TEST(Workspace, StructuralCellsByName) {
  Json doc = Json::parse(R"({"algebras":{"k":{"ground":true}},
    "bimodules":{"V":{"vector_space":2},"U":{"unit":"k"}},
    "cells":{"l":{"structural":"unitor_l","operands":["V"]},
             "li":{"structural":"unitor_l_inv","operands":["V"]},
             "round":{"compose":["l","li"]}}})");
  Workspace<Q> ws(doc, kQ);
  EXPECT_EQ(ws.cell("round").map(), Mat<Q>::identity(kQ, 2));
  EXPECT_THROW(Workspace<Q>::structural("nope", {}), Error);
}

// ---------------------------------------------------------------------------
// verify

TEST(Verify, FilterSelectsOneCriterion) {
  Suite s = run_verify({BICOTRACE_CORPUS, 0, "interplay"});
  ASSERT_FALSE(s.results().empty());
  for (const auto& r : s.results()) EXPECT_EQ(r.criterion, 10) << r.property;
  EXPECT_TRUE(s.all_pass());
}

TEST(Verify, CorruptedExpectationFailsWithResidual) {
  fs::path dir = fs::temp_directory_path() / "bicotrace_bad_corpus";
  fs::create_directories(dir);
  Json doc = read_json_file(corpus("vector_spaces.json"));
  doc["expect"] = Json::array({Json{{"check", "euler"}, {"pair", "p3"}, {"value", {{4}}}}});
  write_text_file((dir / "bad.json").string(), canonical_dump(doc));
  write_text_file((dir / "seeded.json").string(), R"({"instances": 1, "fields": []})");
  Suite s = run_verify({dir.string(), 0, "trace_sanity"});
  ASSERT_EQ(s.results().size(), 1u);
  EXPECT_FALSE(s.results()[0].pass);
  EXPECT_EQ(s.results()[0].residual, Json::parse(R"([["-1/1"]])"));
}

TEST(Verify, SeedChangesInstancesNotOutcome) {
  Suite a = run_verify({BICOTRACE_CORPUS, 0, "cotrace_propositions.tightening"});
  Suite b = run_verify({BICOTRACE_CORPUS, 7, "cotrace_propositions.tightening"});
  EXPECT_TRUE(a.all_pass());
  EXPECT_TRUE(b.all_pass());
  EXPECT_EQ(a.results().size(), b.results().size());
}

// ---------------------------------------------------------------------------
// command line

TEST(Cli, CheckValidWorkspace) {
  CliRun r = cli("check --workspace " + corpus("s3.json"));
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(Json::parse(r.out).at("ok"), true);
}

TEST(Cli, CheckReportsAssociativityWithExitOne) {
  auto p = scratch("assoc.json", R"({"algebras":{"A":{"dim":3,"unit":[1,0,0],"mul":[
    [[1,0,0],[0,1,0],[0,0,1]],
    [[0,1,0],[0,0,1],[0,0,0]],
    [[0,0,1],[0,0,1],[0,0,0]]]}}})");
  CliRun r = cli("check --workspace " + p.string());
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.out.find("AssociativityViolation"), std::string::npos);
}

TEST(Cli, DanglingReferenceExitsOne) {
  auto p = scratch("dangling.json", R"({"bimodules":{"T":{"unit":"missing"}}})");
  EXPECT_EQ(cli("check --workspace " + p.string()).code, 1);
}

TEST(Cli, MalformedJsonAndMissingFileExitTwo) {
  auto p = scratch("broken.json", "{\"field\": \"Q\",,}");
  EXPECT_EQ(cli("check --workspace " + p.string()).code, 2);
  EXPECT_EQ(cli("check --workspace /nonexistent/ws.json").code, 2);
  EXPECT_EQ(cli("frobnicate").code, 2);
}

TEST(Cli, CharacterOfStandardRepresentation) {
  CliRun r = cli("character --workspace " + corpus("s3.json") + " --module standard");
  ASSERT_EQ(r.code, 0);
  Json j = Json::parse(r.out);
  EXPECT_EQ(j.at("value"), Json::parse(R"([["2/1","0/1","-1/1"]])"));
  EXPECT_EQ(j.at("codomain_dim"), 1);
  EXPECT_EQ(j.at("domain_dim"), 3);
}

TEST(Cli, CotraceOfAveragingMap) {
  CliRun r = cli("cotrace --workspace " + corpus("c2.json") + " --map average --pair pV");
  ASSERT_EQ(r.code, 0);
  Json j = Json::parse(r.out);
  EXPECT_EQ(j.at("domain_dim"), 1);
  EXPECT_EQ(j.at("codomain_dim"), 2);
}

TEST(Cli, TraceOfIdempotentAndEuler) {
  CliRun r = cli("trace --workspace " + corpus("vector_spaces.json") + " --map idem --pair p2");
  ASSERT_EQ(r.code, 0);
  EXPECT_EQ(Json::parse(r.out).at("value"), Json::parse(R"([["1/1"]])"));
  CliRun e = cli("trace --workspace " + corpus("vector_spaces.json") + " --module k5");
  ASSERT_EQ(e.code, 0);
  EXPECT_EQ(Json::parse(e.out).at("value"), Json::parse(R"([["5/1"]])"));
}

TEST(Cli, MoritaOnGroundFieldIsOneByOne) {
  CliRun r = cli("morita --workspace " + corpus("morita.json") + " --pair mk --module Uk");
  ASSERT_EQ(r.code, 0);
  Json j = Json::parse(r.out);
  EXPECT_EQ(j.at("domain_dim"), 1);
  EXPECT_EQ(j.at("codomain_dim"), 1);
  EXPECT_EQ(j.at("provenance").at("invertible"), "true");
  EXPECT_EQ(cli("morita --workspace " + corpus("morita.json") + " --pair mC2 --module UC2 --side coshadow").code, 0);
}

TEST(Cli, InduceAndRestrict) {
  auto p = scratch("s3_ind.json", [] {
    Json doc = read_json_file(corpus("s3.json"));
    return canonical_dump(doc);
  }());
  CliRun r = cli("induce --workspace " + p.string() + " --pair ind --module rotation");
  ASSERT_EQ(r.code, 0);
  EXPECT_EQ(Json::parse(r.out).at("value"), Json::parse(R"([["4/1","0/1","-2/1"]])"));
  CliRun s = cli("restrict --workspace " + p.string() + " --pair res --module standard");
  ASSERT_EQ(s.code, 0);
  EXPECT_EQ(Json::parse(s.out).at("value"), Json::parse(R"([["2/1","-1/1","-1/1"]])"));
}

TEST(Cli, OutputRoundTripsByteForByte) {
  fs::path out = fs::temp_directory_path() / "bicotrace_tests" / "out.json";
  fs::create_directories(out.parent_path());
  CliRun r = cli("character --workspace " + corpus("s3.json") + " --module regular --out " + out.string());
  ASSERT_EQ(r.code, 0);
  std::ifstream in(out);
  std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  EXPECT_EQ(canonical_dump(Json::parse(text)), text);
  // and deterministic across runs
  EXPECT_EQ(cli("character --workspace " + corpus("s3.json") + " --module regular").out, text);
}

TEST(Cli, FieldOverrideWorks) {
  CliRun r = cli("character --workspace " + corpus("c2.json") + " --module regular --field F2");
  ASSERT_EQ(r.code, 0);
  EXPECT_EQ(Json::parse(r.out).at("value"), Json::parse(R"([["0/1","0/1"]])"));
}

TEST(Cli, VerifyFilterExitsZero) {
  CliRun r = cli("verify --corpus " + std::string(BICOTRACE_CORPUS) + " --filter morita");
  EXPECT_EQ(r.code, 0);
  Json j = Json::parse(r.out);
  EXPECT_GT(j.at("summary").at("passed").get<int>(), 0);
  EXPECT_EQ(j.at("summary").at("failed"), 0);
}
