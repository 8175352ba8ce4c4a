#include <cctype>
#include <map>
#include <sstream>

#include "ifwb/formula.hpp"
#include "ifwb/tree.hpp"

namespace ifwb {

namespace {

enum class Tok {
  Ident, LParen, RParen, Amp, Pipe, Tilde, Eq, Neq, Slash, LBrace, RBrace,
  Comma, Gap, End
};

struct Token {
  Tok kind;
  std::string text;
  int line, col;
};

std::vector<Token> tokenize(const std::string& s) {
  std::vector<Token> out;
  int line = 1, col = 1;
  size_t i = 0;
  auto push = [&](Tok k, std::string t) {
    out.push_back({k, std::move(t), line, col});
  };
  while (i < s.size()) {
    char c = s[i];
    if (c == '\n') {
      line++;
      col = 1;
      i++;
      continue;
    }
    if (std::isspace(static_cast<unsigned char>(c))) {
      i++;
      col++;
      continue;
    }
    if (std::isalnum(static_cast<unsigned char>(c)) || c == '_') {
      size_t j = i;
      while (j < s.size() &&
             (std::isalnum(static_cast<unsigned char>(s[j])) || s[j] == '_'))
        j++;
      push(Tok::Ident, s.substr(i, j - i));
      col += static_cast<int>(j - i);
      i = j;
      continue;
    }
    switch (c) {
      case '(': push(Tok::LParen, "("); break;
      case ')': push(Tok::RParen, ")"); break;
      case '&': push(Tok::Amp, "&"); break;
      case '|': push(Tok::Pipe, "|"); break;
      case '~': push(Tok::Tilde, "~"); break;
      case '/': push(Tok::Slash, "/"); break;
      case '{': push(Tok::LBrace, "{"); break;
      case '}': push(Tok::RBrace, "}"); break;
      case ',': push(Tok::Comma, ","); break;
      case '=': push(Tok::Eq, "="); break;
      case '[':
        if (i + 1 < s.size() && s[i + 1] == ']') {
          push(Tok::Gap, "[]");
          i++;
          col++;
          break;
        }
        throw ParseError("stray '['", line, col);
      case '!':
        if (i + 1 < s.size() && s[i + 1] == '=') {
          push(Tok::Neq, "!=");
          i++;
          col++;
          break;
        }
        throw ParseError("stray '!'", line, col);
      default:
        throw ParseError(std::string("unexpected character '") + c + "'", line,
                         col);
    }
    i++;
    col++;
  }
  out.push_back({Tok::End, "", line, col});
  return out;
}

bool all_digits(const std::string& s) {
  if (s.empty()) return false;
  for (char c : s)
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  return true;
}

struct QuantHeader {
  QKind kind;
  std::string var;
  std::vector<std::string> slash;
};

class Parser {
 public:
  Parser(const std::string& text, const std::set<std::string>& constants,
         bool allow_gaps)
      : toks_(tokenize(text)), constants_(constants), allow_gaps_(allow_gaps) {}

  FormulaPtr run() {
    FormulaPtr f = parse_expr();
    expect(Tok::End, "trailing input after formula");
    return f;
  }

 private:
  std::vector<Token> toks_;
  size_t pos_ = 0;
  const std::set<std::string>& constants_;
  bool allow_gaps_;
  std::vector<std::string> bound_stack_;
  std::map<std::string, size_t> arities_;

  const Token& peek(size_t ahead = 0) const {
    size_t i = pos_ + ahead;
    return i < toks_.size() ? toks_[i] : toks_.back();
  }
  const Token& take() { return toks_[pos_ < toks_.size() - 1 ? pos_++ : pos_]; }
  bool at(Tok k) const { return peek().kind == k; }
  [[noreturn]] void fail(const std::string& msg) const {
    const Token& t = peek();
    throw ParseError(msg, t.line, t.col);
  }
  void expect(Tok k, const std::string& msg) {
    if (!at(k)) fail(msg);
    take();
  }

  static bool is_quant_letter(const Token& t) {
    return t.kind == Tok::Ident && (t.text == "A" || t.text == "E");
  }

  // `A x` / `E x`, optionally `/{...}`, at the current position; or the same
  // wrapped in parentheses and followed by a body.
  bool at_quant_head() const {
    if (is_quant_letter(peek()) && peek(1).kind == Tok::Ident) return true;
    if (peek().kind != Tok::LParen) return false;
    if (!is_quant_letter(peek(1)) || peek(2).kind != Tok::Ident) return false;
    size_t i = 3;
    if (peek(i).kind == Tok::Slash) {
      if (peek(i + 1).kind != Tok::LBrace) return false;
      i += 2;
      while (peek(i).kind == Tok::Ident) {
        i++;
        if (peek(i).kind == Tok::Comma)
          i++;
        else
          break;
      }
      if (peek(i).kind != Tok::RBrace) return false;
      i++;
    }
    return peek(i).kind == Tok::RParen;
  }

  QuantHeader parse_quant_head() {
    bool wrapped = at(Tok::LParen);
    if (wrapped) take();
    QuantHeader h;
    const Token& q = take();
    h.kind = (q.text == "A") ? QKind::Forall : QKind::Exists;
    if (!at(Tok::Ident)) fail("expected quantified variable name");
    h.var = take().text;
    if (at(Tok::Slash)) {
      take();
      expect(Tok::LBrace, "expected '{' after '/'");
      while (at(Tok::Ident)) {
        h.slash.push_back(take().text);
        if (at(Tok::Comma))
          take();
        else
          break;
      }
      expect(Tok::RBrace, "expected '}' closing slash set");
    }
    if (wrapped) expect(Tok::RParen, "expected ')' closing quantifier");
    for (const auto& w : h.slash)
      if (w == h.var)
        fail("slash set mentions the bound variable of its own quantifier");
    return h;
  }

  FormulaPtr parse_quantified() {
    QuantHeader h = parse_quant_head();
    bound_stack_.push_back(h.var);
    FormulaPtr body = parse_expr();
    bound_stack_.pop_back();
    return quant(h.kind, h.var, h.slash, body);
  }

  // Lowest precedence. A quantifier in operand position swallows everything
  // to the right of it within the enclosing group.
  FormulaPtr parse_expr() {
    if (at_quant_head()) return parse_quantified();
    FormulaPtr node = parse_conj();
    while (at(Tok::Pipe)) {
      take();
      if (at_quant_head()) return disj(node, parse_expr());
      node = disj(node, parse_conj());
    }
    return node;
  }

  FormulaPtr parse_conj() {
    FormulaPtr node = parse_unary();
    while (at(Tok::Amp)) {
      take();
      if (at_quant_head()) return conj(node, parse_expr());
      node = conj(node, parse_unary());
    }
    return node;
  }

  Term resolve_term(const std::string& name) {
    for (auto it = bound_stack_.rbegin(); it != bound_stack_.rend(); ++it)
      if (*it == name) return tvar(name);
    if (all_digits(name) || constants_.count(name)) return tconst(name);
    return tvar(name);
  }

  Term parse_term() {
    if (!at(Tok::Ident)) fail("expected a term");
    return resolve_term(take().text);
  }

  FormulaPtr parse_unary() {
    if (at(Tok::Tilde)) {
      take();
      FormulaPtr sub = parse_unary();
      switch (sub->kind) {
        case FKind::Atom:
          return negated_atom(sub->rel, sub->terms);
        case FKind::Equal:
          return negated_equal(sub->terms[0], sub->terms[1]);
        default:
          return negation(sub);
      }
    }
    if (at(Tok::Gap)) {
      if (!allow_gaps_) fail("gap token '[]' is only permitted in tree input");
      take();
      auto g = atom(std::string("\x01gap"), {});
      return g;
    }
    if (at(Tok::LParen)) {
      take();
      FormulaPtr inner = parse_expr();
      expect(Tok::RParen, "expected ')'");
      return inner;
    }
    if (at(Tok::Ident)) {
      std::string name = take().text;
      if (at(Tok::LParen)) {
        take();
        std::vector<Term> args;
        if (!at(Tok::RParen)) {
          args.push_back(parse_term());
          while (at(Tok::Comma)) {
            take();
            args.push_back(parse_term());
          }
        }
        expect(Tok::RParen, "expected ')' closing atom");
        auto it = arities_.find(name);
        if (it == arities_.end())
          arities_[name] = args.size();
        else if (it->second != args.size())
          fail("relation '" + name + "' used with inconsistent arity");
        return atom(name, std::move(args));
      }
      Term lhs = resolve_term(name);
      if (at(Tok::Eq)) {
        take();
        return equal(lhs, parse_term());
      }
      if (at(Tok::Neq)) {
        take();
        return negated_equal(lhs, parse_term());
      }
      fail("expected '(', '=' or '!=' after identifier '" + name + "'");
    }
    fail("expected a formula");
  }
};

bool is_gap_marker(const FormulaPtr& f) {
  return f->kind == FKind::Atom && f->rel == "\x01gap";
}

TreePtr formula_to_tree(const FormulaPtr& f) {
  switch (f->kind) {
    case FKind::Quant:
      return tquant(f->qkind, f->var, f->slash, formula_to_tree(f->left));
    case FKind::And:
      return tconn(Conn::And, formula_to_tree(f->left), formula_to_tree(f->right));
    case FKind::Or:
      return tconn(Conn::Or, formula_to_tree(f->left), formula_to_tree(f->right));
    case FKind::Atom:
      if (is_gap_marker(f)) return tgap();
      [[fallthrough]];
    default:
      throw ParseError(
          "tree input must be positive initial: quantifiers, connectives and "
          "gaps only",
          0, 0);
  }
}

}  // namespace

FormulaPtr parse_formula(const std::string& text,
                         const std::set<std::string>& constants) {
  return Parser(text, constants, false).run();
}

TreePtr parse_tree(const std::string& text) {
  FormulaPtr f = Parser(text, {}, true).run();
  return renumber_gaps(formula_to_tree(f));
}

namespace {

// Parents pass how tightly the context binds; children parenthesize when
// their own operator binds less tightly, and quantifiers always do in
// operand position (their scope is maximal to the right). PrecTop marks
// positions that already extend to the end of the group.
enum Prec { PrecTop = -1, PrecOr = 0, PrecAnd = 1 };

void render_term(std::ostringstream& os, const Term& t) { os << t.name; }

void render(std::ostringstream& os, const FormulaPtr& f, int ctx,
            bool right_operand) {
  switch (f->kind) {
    case FKind::Atom:
    case FKind::NegAtom: {
      if (f->kind == FKind::NegAtom) os << '~';
      os << f->rel << '(';
      for (size_t i = 0; i < f->terms.size(); i++) {
        if (i) os << ',';
        render_term(os, f->terms[i]);
      }
      os << ')';
      return;
    }
    case FKind::Equal:
    case FKind::NegEqual:
      render_term(os, f->terms[0]);
      os << (f->kind == FKind::Equal ? "=" : "!=");
      render_term(os, f->terms[1]);
      return;
    case FKind::Neg:
      os << "~(";
      render(os, f->left, PrecTop, false);
      os << ')';
      return;
    case FKind::And:
    case FKind::Or: {
      int prec = f->kind == FKind::And ? PrecAnd : PrecOr;
      bool parens = prec < ctx || (prec == ctx && right_operand);
      if (parens) os << '(';
      const char* op = f->kind == FKind::And ? " & " : " | ";
      render(os, f->left, prec, false);
      os << op;
      render(os, f->right, prec, true);
      if (parens) os << ')';
      return;
    }
    case FKind::Quant: {
      bool parens = ctx > PrecTop;
      // operand position: wrap the whole quantified formula
      if (parens) os << '(';
      if (f->slash.empty()) {
        os << (f->qkind == QKind::Forall ? "A " : "E ") << f->var << ' ';
      } else {
        os << '(' << (f->qkind == QKind::Forall ? "A " : "E ") << f->var << "/{";
        for (size_t i = 0; i < f->slash.size(); i++) {
          if (i) os << ',';
          os << f->slash[i];
        }
        os << "}) ";
      }
      render(os, f->left, PrecTop, false);
      if (parens) os << ')';
      return;
    }
  }
}

}  // namespace

std::string render_formula(const FormulaPtr& f) {
  std::ostringstream os;
  render(os, f, PrecTop, false);
  return os.str();
}

std::string render_tree(const TreePtr& t) {
  std::ostringstream os;
  struct {
    void operator()(std::ostringstream& os, const TreePtr& t, bool operand) {
      switch (t->kind) {
        case TKind::Gap:
          os << "[]";
          return;
        case TKind::Quant: {
          if (operand) os << '(';
          if (t->slash.empty()) {
            os << (t->qkind == QKind::Forall ? "A " : "E ") << t->var << ' ';
          } else {
            os << '(' << (t->qkind == QKind::Forall ? "A " : "E ") << t->var
               << "/{";
            for (size_t i = 0; i < t->slash.size(); i++) {
              if (i) os << ',';
              os << t->slash[i];
            }
            os << "}) ";
          }
          (*this)(os, t->child, false);
          if (operand) os << ')';
          return;
        }
        case TKind::Conn: {
          if (operand) os << '(';
          (*this)(os, t->left, true);
          os << (t->conn == Conn::And ? " & " : " | ");
          (*this)(os, t->right, true);
          if (operand) os << ')';
          return;
        }
      }
    }
  } walk;
  walk(os, t, false);
  return os.str();
}

}  // namespace ifwb
