#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "zonemin/zone.hpp"

namespace zonemin {

enum class CmpOp { LE, LT, GE, GT, EQ, NE };

const char *to_string(CmpOp op);
CmpOp negate(CmpOp op);

// Right-hand side of an assignment or comparison: `int`, `ident`, or
// `ident +/- int` (the minus is folded into the constant).
struct ExprAst {
  bool has_var = false;
  std::string var;
  std::int64_t c = 0;
};

struct CondAst {
  std::string lhs;
  CmpOp op = CmpOp::LE;
  ExprAst rhs;
};

struct StmtAst;
using BlockAst = std::vector<StmtAst>;

struct StmtAst {
  enum Kind { Assign, If, While, Assert, Havoc } kind = Assign;
  int line = 0;
  int col = 0;

  std::string target; // Assign / Havoc
  ExprAst expr;       // Assign
  CondAst cond;       // If / While / Assert
  bool has_else = false;

  std::shared_ptr<BlockAst> then_blk; // If
  std::shared_ptr<BlockAst> else_blk; // If
  std::shared_ptr<BlockAst> body;     // While
};

struct Program {
  std::string name;
  std::vector<std::string> decls; // declaration order defines VarIds 1..n
  BlockAst body;

  VarId var_id(const std::string &n) const;
};

// --- flat statements used by the dataflow engine ---------------------------

// Comparison over variables, `v op (u + c)` or `v op c`.
struct Guard {
  VarId v = kZ0;
  CmpOp op = CmpOp::LE;
  bool has_u = false;
  VarId u = kZ0;
  std::int64_t c = 0;

  Guard negated() const;
};

struct Stmt {
  enum Kind { SAssign, SAssume, SAssert, SNop } kind = SNop;
  VarId v = kZ0;  // SAssign target
  LinearRhs rhs;  // SAssign
  Guard guard;    // SAssume / SAssert
  int branch_group = -1; // shared by the two assumes of one conditional
  int line = 0;
  std::string text; // pretty form, for traces and point labels
};

} // namespace zonemin
