#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cctype>
#include <fstream>
#include <sstream>
#include <vector>

#include "ivbmc/cli.hpp"
#include "ivbmc/instrument.hpp"

using namespace ivbmc;

namespace {

std::string corpus_file(const std::string& name) {
  std::ifstream in(std::string(IVBMC_CORPUS_DIR) + "/" + name);
  REQUIRE(in.good());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Pipeline pipeline_for(const std::string& name) {
  return run_pipeline(parse_program(corpus_file(name)), kFixpointEps);
}

// Token stream: identifier/number runs plus single punctuation characters.
std::vector<std::string> tokenize(const std::string& s) {
  std::vector<std::string> out;
  size_t i = 0;
  while (i < s.size()) {
    char c = s[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
      continue;
    }
    if (std::isalnum(static_cast<unsigned char>(c)) || c == '_') {
      size_t start = i;
      while (i < s.size() &&
             (std::isalnum(static_cast<unsigned char>(s[i])) || s[i] == '_'))
        ++i;
      out.push_back(s.substr(start, i - start));
    } else {
      out.push_back(std::string(1, c));
      ++i;
    }
  }
  return out;
}

}  // namespace

TEST_CASE("afnp2014 plan inserts assume(x <= 1000) at the loop end") {
  Pipeline pipe = pipeline_for("afnp2014.c");
  REQUIRE(pipe.plan.applied);
  CHECK(pipe.plan.loop_placement);
  REQUIRE(pipe.plan.assumes.size() == 1);
  CHECK(pipe.plan.assumes[0].var == "x");
  CHECK(pipe.plan.assumes[0].op == CmpOp::LE);
  CHECK(pipe.plan.assumes[0].bound == 1000);

  std::string emitted = emit_source(pipe.instrumented);
  CHECK(emitted.find("assume(x <= 1000);") != std::string::npos);

  // token-equal (modulo whitespace) to the published instrumented listing
  const char* expected = R"(
#include <assert.h>
int main() {
    int x = 1, y = 0;
    while (y < 1000
            && __VERIFIER_nondet_int()) {
        x = x + y;
        y = y + 1;
        assume(x <= 1000);
    }
    assert(x >= y);
    return 0;
}
)";
  CHECK(tokenize(emitted) == tokenize(expected));
}

TEST_CASE("non-monotone variable refuses instrumentation") {
  Pipeline pipe = pipeline_for("fig9_nonmono.c");
  CHECK(!pipe.plan.applied);
  CHECK(pipe.plan.skip_reason == skip_reason::kUnsafePlacement);
  CHECK(structurally_equal(pipe.instrumented, pipe.ir));
}

TEST_CASE("lower-side cut on an increasing variable refuses instrumentation") {
  Pipeline pipe = pipeline_for("overshoot.c");
  CHECK(!pipe.plan.applied);
  CHECK(pipe.plan.skip_reason == skip_reason::kUnsafePlacement);
}

TEST_CASE("opaque update disables instrumentation") {
  Pipeline pipe = pipeline_for("square_growth.c");
  CHECK(!pipe.plan.applied);
  CHECK(pipe.plan.skip_reason == skip_reason::kOpaqueUpdate);
}

TEST_CASE("fig3: no pruning opportunity on the violating side") {
  Pipeline pipe = pipeline_for("fig3.c");
  CHECK(!pipe.plan.applied);
  CHECK(pipe.plan.skip_reason == skip_reason::kNoContraction);
}

TEST_CASE("fig6: straight-line nondet restriction") {
  Pipeline pipe = pipeline_for("fig6.c");
  REQUIRE(pipe.plan.applied);
  CHECK(!pipe.plan.loop_placement);
  REQUIRE(pipe.plan.assumes.size() == 1);
  CHECK(pipe.plan.assumes[0].var == "y");
  CHECK(pipe.plan.assumes[0].op == CmpOp::GE);
  CHECK(pipe.plan.assumes[0].bound == 20);
  std::string emitted = emit_source(pipe.instrumented);
  CHECK(emitted.find("assume(y >= 20);") != std::string::npos);
  // placed after the original assumes, before the assert
  CHECK(emitted.find("assume(y >= 20);") > emitted.find("__ESBMC_assume(y <= 30);"));
  CHECK(emitted.find("assume(y >= 20);") < emitted.find("assert(x >= y);"));
}

TEST_CASE("decreasing variable takes a lower bound") {
  Pipeline pipe = pipeline_for("countdown_floor.c");
  REQUIRE(pipe.plan.applied);
  REQUIRE(pipe.plan.assumes.size() == 1);
  CHECK(pipe.plan.assumes[0].var == "c");
  CHECK(pipe.plan.assumes[0].op == CmpOp::GE);
  CHECK(pipe.plan.assumes[0].bound == 60);
  CHECK(emit_source(pipe.instrumented).find("assume(c >= 60);") !=
        std::string::npos);
}

TEST_CASE("two instrumented variables in declaration order") {
  Pipeline pipe = pipeline_for("sum_threshold.c");
  REQUIRE(pipe.plan.applied);
  REQUIRE(pipe.plan.assumes.size() == 2);
  CHECK(pipe.plan.assumes[0].var == "x");
  CHECK(pipe.plan.assumes[0].bound == 10);
  CHECK(pipe.plan.assumes[1].var == "y");
  CHECK(pipe.plan.assumes[1].bound == 10);
  std::string emitted = emit_source(pipe.instrumented);
  size_t ax = emitted.find("assume(x <= 10);");
  size_t ay = emitted.find("assume(y <= 10);");
  REQUIRE(ax != std::string::npos);
  REQUIRE(ay != std::string::npos);
  CHECK(ax < ay);
  // determinism: the pipeline is a pure function of the source
  Pipeline again = pipeline_for("sum_threshold.c");
  CHECK(emit_source(again.instrumented) == emitted);
}

TEST_CASE("inner contraction that removes everything skips instrumentation") {
  Pipeline pipe = pipeline_for("floor_all_safe.c");
  CHECK(!pipe.plan.applied);
  CHECK(pipe.plan.skip_reason == skip_reason::kWholeDomainSatisfies);
}

TEST_CASE("whole-domain violation keeps the program unchanged") {
  ProgramIR p = parse_program(
      "int main() { int x = nondet_int(); __ESBMC_assume(x >= 1); "
      "__ESBMC_assume(x <= 5); assert(x <= 0); }");
  Pipeline pipe = run_pipeline(p, kFixpointEps);
  REQUIRE(pipe.part.has_value());
  CHECK(pipe.part->whole_domain_violates);
  CHECK(!pipe.plan.applied);
  CHECK(pipe.plan.skip_reason == skip_reason::kWholeDomainViolates);
}

TEST_CASE("identity on skip: emitted source is byte-equal to the original") {
  for (const char* name : {"fig9_nonmono.c", "overshoot.c", "square_growth.c",
                           "neq_assert.c", "fig3.c"}) {
    CAPTURE(name);
    Pipeline pipe = pipeline_for(name);
    CHECK(!pipe.plan.applied);
    CHECK(emit_source(pipe.instrumented) == emit_source(pipe.ir));
  }
}

TEST_CASE("instrument with an empty plan is the identity") {
  ProgramIR p = parse_program(corpus_file("afnp2014.c"));
  InstrumentationPlan empty;
  CHECK(structurally_equal(instrument(p, empty), p));
}

TEST_CASE("emit_source of an empty program is a minimal skeleton") {
  ProgramIR p;
  CHECK(emit_source(p) == "#include <assert.h>\nint main() {\n    return 0;\n}\n");
}
