#include "zonemin/parser.hpp"

#include <algorithm>
#include <cctype>
#include <optional>
#include <sstream>

namespace zonemin {

const char *to_string(CmpOp op) {
  switch (op) {
  case CmpOp::LE: return "<=";
  case CmpOp::LT: return "<";
  case CmpOp::GE: return ">=";
  case CmpOp::GT: return ">";
  case CmpOp::EQ: return "==";
  case CmpOp::NE: return "!=";
  }
  return "?";
}

CmpOp negate(CmpOp op) {
  switch (op) {
  case CmpOp::LE: return CmpOp::GT;
  case CmpOp::LT: return CmpOp::GE;
  case CmpOp::GE: return CmpOp::LT;
  case CmpOp::GT: return CmpOp::LE;
  case CmpOp::EQ: return CmpOp::NE;
  case CmpOp::NE: return CmpOp::EQ;
  }
  return CmpOp::NE;
}

Guard Guard::negated() const {
  Guard g = *this;
  g.op = negate(op);
  return g;
}

VarId Program::var_id(const std::string &n) const {
  for (size_t i = 0; i < decls.size(); ++i)
    if (decls[i] == n)
      return static_cast<VarId>(i + 1);
  return -1;
}

namespace {

struct Token {
  enum Kind { Ident, Int, Sym, End } kind = End;
  std::string text;
  std::int64_t value = 0;
  int line = 1, col = 1;
};

class Lexer {
public:
  explicit Lexer(const std::string &src) : src_(src) { advance(); }

  const Token &peek() const { return tok_; }

  Token next() {
    Token t = tok_;
    advance();
    return t;
  }

private:
  void advance() {
    skip_ws();
    tok_ = Token{};
    tok_.line = line_;
    tok_.col = col_;
    if (pos_ >= src_.size()) {
      tok_.kind = Token::End;
      return;
    }
    char c = src_[pos_];
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      size_t start = pos_;
      while (pos_ < src_.size() &&
             (std::isalnum(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '_'))
        bump();
      tok_.kind = Token::Ident;
      tok_.text = src_.substr(start, pos_ - start);
      return;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      size_t start = pos_;
      while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_])))
        bump();
      tok_.kind = Token::Int;
      tok_.text = src_.substr(start, pos_ - start);
      try {
        tok_.value = std::stoll(tok_.text);
      } catch (const std::out_of_range &) {
        throw ParseError("integer literal out of range", tok_.line, tok_.col);
      }
      if (tok_.value > 2147483647LL)
        throw ParseError("integer literal out of range", tok_.line, tok_.col);
      return;
    }
    // multi-char symbols first
    static const char *two[] = {":=", "<=", ">=", "==", "!="};
    for (const char *s : two) {
      if (src_.compare(pos_, 2, s) == 0) {
        tok_.kind = Token::Sym;
        tok_.text = s;
        bump();
        bump();
        return;
      }
    }
    static const std::string singles = "();{}<>+-";
    if (singles.find(c) != std::string::npos) {
      tok_.kind = Token::Sym;
      tok_.text = std::string(1, c);
      bump();
      return;
    }
    throw ParseError(std::string("unexpected character '") + c + "'", line_, col_);
  }

  void skip_ws() {
    while (pos_ < src_.size()) {
      char c = src_[pos_];
      if (c == '/' && pos_ + 1 < src_.size() && src_[pos_ + 1] == '/') {
        while (pos_ < src_.size() && src_[pos_] != '\n')
          bump();
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        bump();
      } else {
        break;
      }
    }
  }

  void bump() {
    if (src_[pos_] == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    ++pos_;
  }

  const std::string &src_;
  size_t pos_ = 0;
  int line_ = 1, col_ = 1;
  Token tok_;
};

class Parser {
public:
  Parser(const std::string &src, std::string name) : lex_(src), name_(std::move(name)) {}

  Program parse() {
    Program p;
    p.name = name_;
    while (peek_is_ident("int")) {
      expect_ident("int");
      Token id = expect(Token::Ident);
      if (is_keyword(id.text))
        throw ParseError("keyword used as variable name", id.line, id.col);
      if (std::find(p.decls.begin(), p.decls.end(), id.text) != p.decls.end())
        throw ParseError("duplicate declaration of '" + id.text + "'", id.line, id.col);
      p.decls.push_back(id.text);
      expect_sym(";");
    }
    decls_ = &p.decls;
    while (lex_.peek().kind != Token::End)
      p.body.push_back(statement());
    return p;
  }

private:
  static bool is_keyword(const std::string &s) {
    return s == "int" || s == "if" || s == "else" || s == "while" || s == "assert" ||
           s == "havoc";
  }

  bool peek_is_ident(const std::string &s) const {
    return lex_.peek().kind == Token::Ident && lex_.peek().text == s;
  }
  bool peek_is_sym(const std::string &s) const {
    return lex_.peek().kind == Token::Sym && lex_.peek().text == s;
  }

  Token expect(Token::Kind k) {
    Token t = lex_.next();
    if (t.kind != k)
      throw ParseError("unexpected token '" + (t.kind == Token::End ? "<eof>" : t.text) + "'",
                       t.line, t.col);
    return t;
  }
  void expect_sym(const std::string &s) {
    Token t = lex_.next();
    if (t.kind != Token::Sym || t.text != s)
      throw ParseError("expected '" + s + "'", t.line, t.col);
  }
  void expect_ident(const std::string &s) {
    Token t = lex_.next();
    if (t.kind != Token::Ident || t.text != s)
      throw ParseError("expected '" + s + "'", t.line, t.col);
  }

  void check_declared(const Token &id) const {
    if (std::find(decls_->begin(), decls_->end(), id.text) == decls_->end())
      throw ParseError("use of undeclared variable '" + id.text + "'", id.line, id.col);
  }

  std::int64_t signed_int() {
    bool neg = false;
    if (peek_is_sym("-")) {
      lex_.next();
      neg = true;
    }
    Token t = expect(Token::Int);
    return neg ? -t.value : t.value;
  }

  ExprAst expression() {
    ExprAst e;
    if (lex_.peek().kind == Token::Ident) {
      Token id = expect(Token::Ident);
      check_declared(id);
      e.has_var = true;
      e.var = id.text;
      if (peek_is_sym("+") || peek_is_sym("-")) {
        bool minus = lex_.next().text == "-";
        Token n = expect(Token::Int);
        e.c = minus ? -n.value : n.value;
      }
    } else {
      e.c = signed_int();
    }
    return e;
  }

  CondAst condition() {
    CondAst c;
    Token id = expect(Token::Ident);
    check_declared(id);
    c.lhs = id.text;
    Token op = expect(Token::Sym);
    if (op.text == "<=") c.op = CmpOp::LE;
    else if (op.text == "<") c.op = CmpOp::LT;
    else if (op.text == ">=") c.op = CmpOp::GE;
    else if (op.text == ">") c.op = CmpOp::GT;
    else if (op.text == "==") c.op = CmpOp::EQ;
    else if (op.text == "!=") c.op = CmpOp::NE;
    else throw ParseError("expected comparison operator", op.line, op.col);
    c.rhs = expression();
    return c;
  }

  std::shared_ptr<BlockAst> block() {
    expect_sym("{");
    auto blk = std::make_shared<BlockAst>();
    while (!peek_is_sym("}"))
      blk->push_back(statement());
    expect_sym("}");
    return blk;
  }

  StmtAst statement() {
    Token t = lex_.peek();
    StmtAst s;
    s.line = t.line;
    s.col = t.col;
    if (peek_is_ident("if")) {
      lex_.next();
      s.kind = StmtAst::If;
      expect_sym("(");
      s.cond = condition();
      expect_sym(")");
      s.then_blk = block();
      if (peek_is_ident("else")) {
        lex_.next();
        s.has_else = true;
        s.else_blk = block();
      } else {
        s.else_blk = std::make_shared<BlockAst>();
      }
      return s;
    }
    if (peek_is_ident("while")) {
      lex_.next();
      s.kind = StmtAst::While;
      expect_sym("(");
      s.cond = condition();
      expect_sym(")");
      s.body = block();
      return s;
    }
    if (peek_is_ident("assert")) {
      lex_.next();
      s.kind = StmtAst::Assert;
      s.cond = condition();
      expect_sym(";");
      return s;
    }
    if (peek_is_ident("havoc")) {
      lex_.next();
      s.kind = StmtAst::Havoc;
      Token id = expect(Token::Ident);
      check_declared(id);
      s.target = id.text;
      expect_sym(";");
      return s;
    }
    Token id = expect(Token::Ident);
    if (is_keyword(id.text))
      throw ParseError("unexpected keyword '" + id.text + "'", id.line, id.col);
    check_declared(id);
    s.kind = StmtAst::Assign;
    s.target = id.text;
    expect_sym(":=");
    s.expr = expression();
    expect_sym(";");
    return s;
  }

  Lexer lex_;
  std::string name_;
  const std::vector<std::string> *decls_ = nullptr;
};

std::string expr_str(const ExprAst &e) {
  std::ostringstream os;
  if (e.has_var) {
    os << e.var;
    if (e.c > 0)
      os << " + " << e.c;
    else if (e.c < 0)
      os << " - " << -e.c;
  } else {
    os << e.c;
  }
  return os.str();
}

std::string cond_str(const CondAst &c) {
  return c.lhs + " " + to_string(c.op) + " " + expr_str(c.rhs);
}

void print_block(std::ostringstream &os, const BlockAst &blk, int indent);

void print_stmt(std::ostringstream &os, const StmtAst &s, int indent) {
  std::string pad(static_cast<size_t>(indent) * 2, ' ');
  switch (s.kind) {
  case StmtAst::Assign:
    os << pad << s.target << " := " << expr_str(s.expr) << ";\n";
    break;
  case StmtAst::If:
    os << pad << "if (" << cond_str(s.cond) << ") {\n";
    print_block(os, *s.then_blk, indent + 1);
    if (s.has_else) {
      os << pad << "} else {\n";
      print_block(os, *s.else_blk, indent + 1);
    }
    os << pad << "}\n";
    break;
  case StmtAst::While:
    os << pad << "while (" << cond_str(s.cond) << ") {\n";
    print_block(os, *s.body, indent + 1);
    os << pad << "}\n";
    break;
  case StmtAst::Assert:
    os << pad << "assert " << cond_str(s.cond) << ";\n";
    break;
  case StmtAst::Havoc:
    os << pad << "havoc " << s.target << ";\n";
    break;
  }
}

void print_block(std::ostringstream &os, const BlockAst &blk, int indent) {
  for (const auto &s : blk)
    print_stmt(os, s, indent);
}

} // namespace

Program parse_program(const std::string &text, const std::string &name) {
  Parser p(text, name);
  return p.parse();
}

std::string pretty_print(const Program &p) {
  std::ostringstream os;
  for (const auto &d : p.decls)
    os << "int " << d << ";\n";
  print_block(os, p.body, 0);
  return os.str();
}

} // namespace zonemin
