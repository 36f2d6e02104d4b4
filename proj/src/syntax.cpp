#include "loopfo/syntax.hpp"

#include <algorithm>
#include <cctype>
#include <functional>
#include <map>

namespace loopfo {

namespace {

enum class Tok {
  End,
  Ident,
  Label,
  At,
  LParen,
  RParen,
  Comma,
  Dot,
  Colon,
  Tilde,
  And,
  Or,
  Implies,
  Iff,
  Eq,
};

struct Token {
  Tok kind = Tok::End;
  std::string text;
  std::size_t line = 1;
  std::size_t column = 1;
};

bool is_ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool is_ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\''; }
bool is_variable_name(const std::string& s) { return !s.empty() && std::islower(static_cast<unsigned char>(s[0])); }

class Lexer {
 public:
  explicit Lexer(std::string_view text) : text_(text) {}

  std::vector<Token> run() {
    std::vector<Token> out;
    for (;;) {
      skip_space();
      Token t;
      t.line = line_;
      t.column = col_;
      if (pos_ >= text_.size()) {
        out.push_back(t);
        return out;
      }
      char c = text_[pos_];
      if (is_ident_start(c)) {
        std::size_t start = pos_;
        while (pos_ < text_.size() && is_ident_char(text_[pos_])) advance();
        t.text = std::string(text_.substr(start, pos_ - start));
        t.kind = is_label_token(t.text) ? Tok::Label : Tok::Ident;
      } else if (starts("<->")) {
        t.kind = Tok::Iff;
        advance(3);
      } else if (starts("->")) {
        t.kind = Tok::Implies;
        advance(2);
      } else {
        switch (c) {
          case '@': t.kind = Tok::At; break;
          case '(': t.kind = Tok::LParen; break;
          case ')': t.kind = Tok::RParen; break;
          case ',': t.kind = Tok::Comma; break;
          case '.': t.kind = Tok::Dot; break;
          case ':': t.kind = Tok::Colon; break;
          case '~': t.kind = Tok::Tilde; break;
          case '&': t.kind = Tok::And; break;
          case '|': t.kind = Tok::Or; break;
          case '=': t.kind = Tok::Eq; break;
          default:
            throw SyntaxError(std::string("unexpected character '") + c + "'", line_, col_);
        }
        advance();
      }
      out.push_back(t);
    }
  }

 private:
  bool starts(std::string_view s) const { return text_.substr(pos_, s.size()) == s; }

  void advance(std::size_t n = 1) {
    for (std::size_t i = 0; i < n && pos_ < text_.size(); ++i) {
      if (text_[pos_] == '\n') {
        ++line_;
        col_ = 1;
      } else {
        ++col_;
      }
      ++pos_;
    }
  }

  void skip_space() {
    while (pos_ < text_.size()) {
      char c = text_[pos_];
      if (std::isspace(static_cast<unsigned char>(c))) {
        advance();
      } else if (c == '#') {
        while (pos_ < text_.size() && text_[pos_] != '\n') advance();
      } else {
        break;
      }
    }
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  std::size_t line_ = 1;
  std::size_t col_ = 1;
};

class Parser {
 public:
  Parser(std::vector<Token> toks, const Vocabulary* vocab) : toks_(std::move(toks)), vocab_(vocab) {}

  Formula parse_all() {
    Formula f = parse_iff();
    if (peek().kind != Tok::End) fail("unexpected " + describe(peek()));
    return f;
  }

 private:
  const Token& peek() const { return toks_[pos_]; }
  Token take() { return toks_[pos_++]; }

  [[noreturn]] void fail(const std::string& msg) const { fail_at(msg, peek()); }
  [[noreturn]] static void fail_at(const std::string& msg, const Token& t) {
    throw SyntaxError(msg, t.line, t.column);
  }

  static std::string describe(const Token& t) {
    switch (t.kind) {
      case Tok::End: return "end of input";
      case Tok::Ident:
      case Tok::Label: return "'" + t.text + "'";
      case Tok::At: return "'@'";
      case Tok::LParen: return "'('";
      case Tok::RParen: return "')'";
      case Tok::Comma: return "','";
      case Tok::Dot: return "'.'";
      case Tok::Colon: return "':'";
      case Tok::Tilde: return "'~'";
      case Tok::And: return "'&'";
      case Tok::Or: return "'|'";
      case Tok::Implies: return "'->'";
      case Tok::Iff: return "'<->'";
      case Tok::Eq: return "'='";
    }
    return "token";
  }

  void expect(Tok k, const char* what) {
    if (peek().kind != k) fail(std::string("expected ") + what + ", found " + describe(peek()));
    ++pos_;
  }

  Formula parse_iff() {
    Formula f = parse_implies();
    while (peek().kind == Tok::Iff) {
      ++pos_;
      Formula g = parse_implies();
      f = Formula::conjunction(Formula::disjunction(Formula::negation(f), g),
                               Formula::disjunction(Formula::negation(g), f));
    }
    return f;
  }

  Formula parse_implies() {
    Formula f = parse_or();
    if (peek().kind == Tok::Implies) {
      ++pos_;
      Formula g = parse_implies();
      return Formula::disjunction(Formula::negation(f), g);
    }
    return f;
  }

  Formula parse_or() {
    Formula f = parse_and();
    while (peek().kind == Tok::Or) {
      ++pos_;
      f = Formula::disjunction(f, parse_and());
    }
    return f;
  }

  Formula parse_and() {
    Formula f = parse_prefix();
    while (peek().kind == Tok::And) {
      ++pos_;
      f = Formula::conjunction(f, parse_prefix());
    }
    return f;
  }

  Formula parse_prefix() {
    const Token& t = peek();
    if (t.kind == Tok::Tilde) {
      ++pos_;
      return Formula::negation(parse_prefix());
    }
    if (t.kind == Tok::Label) {
      Token lab = take();
      expect(Tok::Colon, "':' after label");
      return Formula::labeled(label_number(lab), parse_prefix());
    }
    if (t.kind == Tok::Ident && (t.text == "exists" || t.text == "forall")) {
      bool ex = t.text == "exists";
      ++pos_;
      Token v = take();
      if (v.kind != Tok::Ident || !is_variable_name(v.text) || is_keyword(v.text))
        fail_at("expected a variable after quantifier", v);
      expect(Tok::Dot, "'.' after quantified variable");
      Formula body = parse_iff();
      return ex ? Formula::exists(v.text, body) : Formula::forall(v.text, body);
    }
    return parse_atom();
  }

  static bool is_keyword(const std::string& s) {
    return s == "exists" || s == "forall" || s == "bot" || s == "top";
  }

  static LabelId label_number(const Token& t) {
    try {
      return static_cast<LabelId>(std::stoul(t.text.substr(1)));
    } catch (const std::exception&) {
      fail_at("label id out of range", t);
    }
  }

  Formula parse_atom() {
    Token t = take();
    switch (t.kind) {
      case Tok::LParen: {
        Formula f = parse_iff();
        expect(Tok::RParen, "')'");
        return f;
      }
      case Tok::At: {
        Token lab = take();
        if (lab.kind != Tok::Label) fail_at("expected a label after '@'", lab);
        if (peek().kind == Tok::LParen) fail("claims take no arguments");
        return Formula::claim(label_number(lab));
      }
      case Tok::Ident: break;
      case Tok::Label: fail_at("label " + t.text + " must be followed by ':'", t);
      default: fail_at("unexpected " + describe(t), t);
    }
    if (t.text == "bot") return Formula::falsum();
    if (t.text == "top") return Formula::top();
    if (t.text == "exists" || t.text == "forall") fail_at("misplaced quantifier", t);
    if (is_variable_name(t.text)) {
      if (peek().kind != Tok::Eq) fail("expected '=' after variable '" + t.text + "'");
      ++pos_;
      Token v = take();
      if (v.kind != Tok::Ident || !is_variable_name(v.text) || is_keyword(v.text))
        fail_at("expected a variable after '='", v);
      return Formula::equal(t.text, v.text);
    }
    std::vector<Variable> args;
    if (peek().kind == Tok::LParen) {
      ++pos_;
      for (;;) {
        Token v = take();
        if (v.kind != Tok::Ident || !is_variable_name(v.text) || is_keyword(v.text))
          fail_at("expected a variable argument", v);
        args.push_back(v.text);
        if (peek().kind == Tok::Comma) {
          ++pos_;
          continue;
        }
        expect(Tok::RParen, "')' or ','");
        break;
      }
    }
    check_arity(t, args.size());
    return Formula::atom(t.text, std::move(args));
  }

  void check_arity(const Token& t, std::size_t n) {
    if (vocab_) {
      auto it = vocab_->find(t.text);
      if (it == vocab_->end()) fail_at("undeclared predicate '" + t.text + "'", t);
      if (it->second != n)
        fail_at("arity mismatch for '" + t.text + "': expected " + std::to_string(it->second) + ", got " +
                    std::to_string(n),
                t);
      return;
    }
    auto [it, inserted] = seen_.emplace(t.text, static_cast<unsigned>(n));
    if (!inserted && it->second != n)
      fail_at("arity mismatch for '" + t.text + "': used with " + std::to_string(it->second) + " and " +
                  std::to_string(n) + " arguments",
              t);
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
  const Vocabulary* vocab_;
  Vocabulary seen_;
};

void print_rec(const Formula& f, bool root, bool open_end, std::string& out) {
  switch (f.kind()) {
    case Kind::Falsum: out += "bot"; return;
    case Kind::Atom: {
      out += f.predicate();
      if (!f.args().empty()) {
        out += '(';
        for (std::size_t i = 0; i < f.args().size(); ++i) {
          if (i) out += ',';
          out += f.args()[i];
        }
        out += ')';
      }
      return;
    }
    case Kind::Equal: out += f.args()[0] + " = " + f.args()[1]; return;
    case Kind::Claim: out += "@L" + std::to_string(f.label()); return;
    case Kind::Not:
      out += '~';
      print_rec(f.child(), false, open_end, out);
      return;
    case Kind::Label:
      out += "L" + std::to_string(f.label()) + ": ";
      print_rec(f.child(), false, open_end, out);
      return;
    case Kind::Exists:
    case Kind::Forall: {
      if (!open_end) out += '(';
      out += f.is(Kind::Exists) ? "exists " : "forall ";
      out += f.var() + ". ";
      print_rec(f.child(), false, true, out);
      if (!open_end) out += ')';
      return;
    }
    case Kind::And:
    case Kind::Or: {
      bool wrap = !root;
      if (wrap) out += '(';
      print_rec(f.left(), false, false, out);
      out += f.is(Kind::And) ? " & " : " | ";
      print_rec(f.right(), false, wrap ? true : open_end, out);
      if (wrap) out += ')';
      return;
    }
  }
}

void free_vars_rec(const Formula& f, std::vector<Variable>& bound, std::set<Variable>& out) {
  switch (f.kind()) {
    case Kind::Atom:
    case Kind::Equal:
      for (const auto& a : f.args())
        if (std::find(bound.begin(), bound.end(), a) == bound.end()) out.insert(a);
      return;
    case Kind::Exists:
    case Kind::Forall:
      bound.push_back(f.var());
      free_vars_rec(f.child(), bound, out);
      bound.pop_back();
      return;
    default:
      for (std::size_t i = 0; i < f.arity(); ++i) free_vars_rec(f.child(i), bound, out);
  }
}

void all_vars_rec(const Formula& f, std::vector<Variable>& out) {
  auto add = [&](const Variable& v) {
    if (std::find(out.begin(), out.end(), v) == out.end()) out.push_back(v);
  };
  if (f.is_quantifier()) add(f.var());
  for (const auto& a : f.args()) add(a);
  for (std::size_t i = 0; i < f.arity(); ++i) all_vars_rec(f.child(i), out);
}

void vocab_rec(const Formula& f, Vocabulary& out) {
  if (f.is(Kind::Atom)) {
    auto [it, inserted] = out.emplace(f.predicate(), static_cast<unsigned>(f.args().size()));
    if (!inserted && it->second != f.args().size())
      throw InputError("predicate '" + f.predicate() + "' used with inconsistent arities");
  }
  for (std::size_t i = 0; i < f.arity(); ++i) vocab_rec(f.child(i), out);
}

// Visits claims below `f` (at `path`) that are bound to the outermost label
// `id` being tracked, i.e. not shadowed by an inner label with the same id.
void strict_claims_rec(const Formula& f, LabelId id, OccPath& path, std::vector<OccPath>& out) {
  if (f.is(Kind::Claim)) {
    if (f.label() == id) out.push_back(path);
    return;
  }
  if (f.is(Kind::Label) && f.label() == id) return;
  for (std::uint32_t i = 0; i < f.arity(); ++i) {
    path.steps.push_back(i);
    strict_claims_rec(f.child(i), id, path, out);
    path.steps.pop_back();
  }
}

void free_claims_rec(const Formula& f, std::vector<LabelId>& bound, OccPath& path, std::vector<OccPath>& out) {
  if (f.is(Kind::Claim)) {
    if (std::find(bound.begin(), bound.end(), f.label()) == bound.end()) out.push_back(path);
    return;
  }
  if (f.is(Kind::Label)) bound.push_back(f.label());
  for (std::uint32_t i = 0; i < f.arity(); ++i) {
    path.steps.push_back(i);
    free_claims_rec(f.child(i), bound, path, out);
    path.steps.pop_back();
  }
  if (f.is(Kind::Label)) bound.pop_back();
}

void label_ids_rec(const Formula& f, std::set<LabelId>& out, std::vector<LabelId>* labels_only) {
  if (f.is(Kind::Claim)) out.insert(f.label());
  if (f.is(Kind::Label)) {
    out.insert(f.label());
    if (labels_only) labels_only->push_back(f.label());
  }
  for (std::size_t i = 0; i < f.arity(); ++i) label_ids_rec(f.child(i), out, labels_only);
}

void postorder_labels(const Formula& f, OccPath& path, std::vector<OccPath>& out) {
  for (std::uint32_t i = 0; i < f.arity(); ++i) {
    path.steps.push_back(i);
    postorder_labels(f.child(i), path, out);
    path.steps.pop_back();
  }
  if (f.is(Kind::Label)) out.push_back(path);
}

std::size_t nesting_rec(const Formula& f) {
  std::size_t best = 0;
  for (std::size_t i = 0; i < f.arity(); ++i) best = std::max(best, nesting_rec(f.child(i)));
  return best + (f.is(Kind::Label) ? 1 : 0);
}

std::optional<Formula> subst_rec(const Formula& f, const Variable& x, const Variable& y, bool under_y) {
  switch (f.kind()) {
    case Kind::Atom:
    case Kind::Equal: {
      bool hit = std::find(f.args().begin(), f.args().end(), x) != f.args().end();
      if (!hit) return f;
      if (under_y) return std::nullopt;
      std::vector<Variable> args = f.args();
      for (auto& a : args)
        if (a == x) a = y;
      return f.is(Kind::Atom) ? Formula::atom(f.predicate(), args) : Formula::equal(args[0], args[1]);
    }
    case Kind::Exists:
    case Kind::Forall: {
      if (f.var() == x) return f;
      auto body = subst_rec(f.child(), x, y, under_y || f.var() == y);
      if (!body) return std::nullopt;
      return Formula::quantifier(f.kind(), f.var(), *body);
    }
    case Kind::Falsum:
    case Kind::Claim: return f;
    case Kind::Not:
    case Kind::Label: {
      auto c = subst_rec(f.child(), x, y, under_y);
      if (!c) return std::nullopt;
      return f.is(Kind::Not) ? Formula::negation(*c) : Formula::labeled(f.label(), *c);
    }
    case Kind::And:
    case Kind::Or: {
      auto a = subst_rec(f.left(), x, y, under_y);
      auto b = subst_rec(f.right(), x, y, under_y);
      if (!a || !b) return std::nullopt;
      return Formula::binary(f.kind(), *a, *b);
    }
  }
  return f;
}

}  // namespace

bool is_label_token(std::string_view name) {
  if (name.size() < 2 || name[0] != 'L') return false;
  return std::all_of(name.begin() + 1, name.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); });
}

Formula parse_formula(std::string_view text, const Vocabulary& vocab) {
  for (const auto& [name, arity] : vocab) {
    (void)arity;
    if (name.empty() || is_label_token(name)) throw InputError("invalid predicate name '" + name + "'");
  }
  return Parser(Lexer(text).run(), &vocab).parse_all();
}

Formula parse_formula(std::string_view text) { return Parser(Lexer(text).run(), nullptr).parse_all(); }

std::string print_formula(const Formula& f) {
  std::string out;
  print_rec(f, true, true, out);
  return out;
}

Vocabulary vocabulary_of(const Formula& f) {
  Vocabulary v;
  vocab_rec(f, v);
  return v;
}

std::set<Variable> free_variables(const Formula& f) {
  std::set<Variable> out;
  std::vector<Variable> bound;
  free_vars_rec(f, bound, out);
  return out;
}

std::vector<Variable> all_variables(const Formula& f) {
  std::vector<Variable> out;
  all_vars_rec(f, out);
  return out;
}

std::optional<OccPath> resolve_reference(const Formula& f, const OccPath& claim) {
  const Formula& c = subformula(f, claim);
  if (!c.is(Kind::Claim)) throw InputError("path '" + claim.str() + "' does not address a claim");
  std::optional<OccPath> best;
  const Formula* cur = &f;
  OccPath prefix;
  for (auto s : claim.steps) {
    if (cur->is(Kind::Label) && cur->label() == c.label()) best = prefix;
    cur = &cur->child(s);
    prefix.steps.push_back(s);
  }
  return best;
}

std::vector<OccPath> strict_scope_claims(const Formula& f, const OccPath& label) {
  const Formula& l = subformula(f, label);
  if (!l.is(Kind::Label)) throw InputError("path '" + label.str() + "' does not address a label");
  std::vector<OccPath> out;
  OccPath path = label.child(0);
  strict_claims_rec(l.child(), l.label(), path, out);
  return out;
}

std::vector<OccPath> free_claims(const Formula& f) {
  std::vector<OccPath> out;
  std::vector<LabelId> bound;
  OccPath path;
  free_claims_rec(f, bound, path, out);
  return out;
}

bool is_dummy_label(const Formula& f, const OccPath& label) { return strict_scope_claims(f, label).empty(); }

Polarity occurrence_polarity(const Formula& f, const OccPath& p) {
  const Formula* cur = &f;
  std::size_t negs = 0;
  for (auto s : p.steps) {
    if (s >= cur->arity()) throw InputError("invalid occurrence path '" + p.str() + "'");
    if (cur->is(Kind::Not)) ++negs;
    cur = &cur->child(s);
  }
  return negs % 2 == 0 ? Polarity::Positive : Polarity::Negative;
}

bool is_regular(const Formula& f) {
  std::set<LabelId> all;
  std::vector<LabelId> labels;
  label_ids_rec(f, all, &labels);
  std::set<LabelId> seen;
  for (auto l : labels)
    if (!seen.insert(l).second) return false;
  for (const auto& c : free_claims(f))
    if (seen.count(subformula(f, c).label())) return false;
  return true;
}

bool is_pure_fo(const Formula& f) {
  if (f.is(Kind::Claim) || f.is(Kind::Label)) return false;
  for (std::size_t i = 0; i < f.arity(); ++i)
    if (!is_pure_fo(f.child(i))) return false;
  return true;
}

std::set<LabelId> label_ids(const Formula& f) {
  std::set<LabelId> out;
  label_ids_rec(f, out, nullptr);
  return out;
}

LabelId fresh_label(const std::set<LabelId>& used) {
  LabelId id = 1;
  while (used.count(id)) ++id;
  return id;
}

LabelId fresh_label(const Formula& f) { return fresh_label(label_ids(f)); }

std::size_t label_nesting_depth(const Formula& f) { return nesting_rec(f); }

std::optional<int> rename_violation(const Formula& f, const OccPath& label, LabelId new_id) {
  const Formula& l = subformula(f, label);
  if (!l.is(Kind::Label)) throw InputError("path '" + label.str() + "' does not address a label");
  // (1) no free claim of new_id inside the labelled subformula.
  std::vector<OccPath> inner_free;
  std::vector<LabelId> bound;
  OccPath rel;
  free_claims_rec(l, bound, rel, inner_free);
  for (const auto& c : inner_free)
    if (subformula(l, c).label() == new_id) return 1;
  // (2) no renamed claim inside an inner label carrying new_id.
  for (const auto& c : strict_scope_claims(f, label)) {
    const Formula* cur = &l;
    for (std::size_t i = label.size(); i < c.size(); ++i) {
      if (i > label.size() && cur->is(Kind::Label) && cur->label() == new_id) return 2;
      cur = &cur->child(c.steps[i]);
    }
  }
  return std::nullopt;
}

Formula rename_label(const Formula& f, const OccPath& label, LabelId new_id) {
  if (auto v = rename_violation(f, label, new_id)) {
    if (*v == 1)
      throw InputError("unsafe rename: condition (1), the labelled subformula contains a free @L" +
                       std::to_string(new_id));
    throw InputError("unsafe rename: condition (2), a renamed claim lies in the scope of an inner L" +
                     std::to_string(new_id));
  }
  Formula out = f;
  for (const auto& c : strict_scope_claims(f, label)) out = replace_at(out, c, Formula::claim(new_id));
  const Formula& l = subformula(out, label);
  return replace_at(out, label, Formula::labeled(new_id, l.child()));
}

std::vector<std::pair<OccPath, LabelId>> regularization_steps(const Formula& f) {
  std::vector<std::pair<OccPath, LabelId>> steps;
  if (is_regular(f)) return steps;
  std::vector<OccPath> order;
  OccPath path;
  postorder_labels(f, path, order);
  std::set<LabelId> used = label_ids(f);
  for (const auto& p : order) {
    LabelId id = fresh_label(used);
    used.insert(id);
    steps.emplace_back(p, id);
  }
  return steps;
}

Formula regularize(const Formula& f) {
  Formula out = f;
  for (const auto& [p, id] : regularization_steps(f)) out = rename_label(out, p, id);
  return out;
}

std::optional<Formula> substitute_variable(const Formula& f, const Variable& x, const Variable& y) {
  if (x == y) return f;
  return subst_rec(f, x, y, false);
}

}  // namespace loopfo
