#ifndef IVBMC_PROGRAM_HPP
#define IVBMC_PROGRAM_HPP

#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "ivbmc/constraint.hpp"

namespace ivbmc {

// ---------------------------------------------------------------------------
// IR for the mini-C verification language:
//   declarations (constant or nondet initializers), assume directives,
//   at most one while loop with linear updates, asserts, return.
// ---------------------------------------------------------------------------

enum class VarType { Int32, UInt32 };

enum class CmpOp { LT, LE, GT, GE, EQ, NE };

enum class PKind { Const, Var, Add, Sub, Mul, Div, Neg };

// Program-level arithmetic expression. Value semantics via child vectors.
struct PExpr {
  PKind kind = PKind::Const;
  long long value = 0;   // Const
  std::string var;       // Var
  int var_idx = -1;      // filled by the harness when compiling
  std::vector<PExpr> kids;

  static PExpr constant(long long v);
  static PExpr variable(std::string name);
  static PExpr unary(PKind k, PExpr c);
  static PExpr binary(PKind k, PExpr l, PExpr r);
};

struct Comparison {
  PExpr lhs;
  CmpOp op = CmpOp::LE;
  PExpr rhs;
  int line = 0;
};

struct DeclItem {
  std::string name;
  VarType type = VarType::Int32;
  bool nondet = false;
  long long init = 0;          // when !nondet
  std::string nondet_callee;   // original spelling, for emission
  int line = 0;
};

// One declaration statement; may declare several variables ("int x = 1, y = 0;").
struct DeclGroup {
  VarType type = VarType::Int32;
  std::vector<DeclItem> items;
  int line = 0;
};

struct AssumeStmt {
  Comparison cmp;
  std::string callee = "assume";
  int line = 0;
  bool synthetic = false;  // inserted by the instrumenter
};

enum class UpdateKind { AddTerm, SubTerm, Assign, Opaque };

struct Update {
  std::string target;
  UpdateKind kind = UpdateKind::Opaque;
  PExpr term;     // AddTerm/SubTerm: the added term; Assign: the whole rhs
  PExpr raw_rhs;  // always the full right-hand side
  int line = 0;
};

using BodyStmt = std::variant<Update, AssumeStmt>;

struct LoopInfo {
  std::optional<Comparison> guard;
  bool nondet_continue = false;
  std::string nondet_callee;
  std::vector<BodyStmt> body;
  int line = 0;
};

struct AssertStmt {
  Comparison cmp;
  int line = 0;
};

struct ProgramIR {
  std::vector<DeclGroup> decls;
  std::vector<AssumeStmt> assumes;
  std::optional<LoopInfo> loop;
  std::vector<AssertStmt> asserts;
  long long return_value = 0;

  std::vector<const DeclItem*> decl_items() const;
  const DeclItem* find_decl(const std::string& name) const;
  bool updates_in_loop(const std::string& name) const;
};

// Parses a mini-C source file. Statement order is fixed: declarations,
// assumes, an optional while loop, asserts, return. Errors carry the line.
ProgramIR parse_program(const std::string& text);

std::string to_string(CmpOp op);
std::string to_string(const PExpr& e);
std::string to_string(const Comparison& c);

// ---------------------------------------------------------------------------
// Analyses feeding the contractor pipeline
// ---------------------------------------------------------------------------

struct SkippedAssert {
  std::string text;
  std::string reason;  // machine-readable code, e.g. "unsupported-operator"
  std::string detail;
  int line = 0;
};

struct PropertyAnalysis {
  std::vector<ConstraintExpr> constraints;
  std::vector<std::string> vars;  // assert variables, first-appearance order
  std::vector<SkippedAssert> skipped;
};

// Converts each assert into a normalized constraint, collecting the assert
// variables. Unsupported asserts are recorded as skipped, never raised.
PropertyAnalysis analyze_properties(const ProgramIR& p);

struct VarDomain {
  Interval itv;
  bool integral = true;
};

using DomainMap = std::map<std::string, VarDomain>;

// Builds a sound interval for every declared variable: declared type range,
// refined by assume comparisons against constants, then widened along the
// update direction for loop-carried variables (the loop guard caps the
// widened side when it bounds the variable). Throws EmptyDomainError when
// the assumes are contradictory.
DomainMap analyze_intervals(const ProgramIR& p);

enum class Monotonicity { MonotoneIncreasing, MonotoneDecreasing, Constant, Unknown };

// Syntactic monotonicity judgment for a loop variable: every update must add
// (resp. subtract) a term whose interval over the domain map is sign-definite.
Monotonicity monotonicity_check(const ProgramIR& p, const std::string& var,
                                const DomainMap& domains);

std::string to_string(Monotonicity m);

// Interval of a program expression over the domain map (natural extension).
Interval eval_pexpr_interval(const PExpr& e, const DomainMap& domains);

// Assembles the CSP: assert variables with their integrality flags, domain
// box, and the parsed constraints.
Csp build_csp(const ProgramIR& p, const PropertyAnalysis& props,
              const DomainMap& domains);

bool structurally_equal(const ProgramIR& a, const ProgramIR& b);

}  // namespace ivbmc

#endif  // IVBMC_PROGRAM_HPP
