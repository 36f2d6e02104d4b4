#include "loopfo/structure.hpp"

#include <cctype>
#include <functional>
#include <sstream>
#include <unordered_map>

#include "loopfo/error.hpp"
#include "loopfo/syntax.hpp"

namespace loopfo {

namespace {

std::size_t power(std::size_t base, std::size_t exp) {
  std::size_t r = 1;
  for (std::size_t i = 0; i < exp; ++i) r *= base;
  return r;
}

}  // namespace

Structure::Structure(std::size_t domain_size, Vocabulary vocab) : n_(domain_size), vocab_(std::move(vocab)) {
  if (n_ == 0) throw InputError("empty domain");
  for (const auto& [name, arity] : vocab_) {
    if (name.empty() || is_label_token(name)) throw InputError("invalid predicate name '" + name + "'");
    tables_[name].assign(power(n_, arity), 0);
  }
}

unsigned Structure::arity(const std::string& pred) const {
  auto it = vocab_.find(pred);
  if (it == vocab_.end()) throw InputError("predicate '" + pred + "' is not interpreted");
  return it->second;
}

std::size_t Structure::index(const std::string& pred, const Tuple& t) const {
  if (t.size() != arity(pred))
    throw InputError("arity mismatch for '" + pred + "': expected " + std::to_string(arity(pred)) + ", got " +
                     std::to_string(t.size()));
  std::size_t idx = 0;
  for (auto e : t) {
    if (e >= n_) throw InputError("element " + std::to_string(e) + " out of range for domain " + std::to_string(n_));
    idx = idx * n_ + e;
  }
  return idx;
}

bool Structure::holds(const std::string& pred, const Tuple& t) const { return tables_.at(pred)[index(pred, t)] != 0; }

void Structure::set(const std::string& pred, const Tuple& t, bool value) {
  auto i = index(pred, t);
  tables_.at(pred)[i] = value ? 1 : 0;
}

std::vector<Tuple> Structure::tuples(const std::string& pred) const {
  std::vector<Tuple> out;
  const auto& tab = table(pred);
  unsigned k = arity(pred);
  for (std::size_t i = 0; i < tab.size(); ++i) {
    if (!tab[i]) continue;
    Tuple t(k);
    std::size_t rest = i;
    for (unsigned j = k; j-- > 0;) {
      t[j] = static_cast<Element>(rest % n_);
      rest /= n_;
    }
    out.push_back(std::move(t));
  }
  return out;
}

const std::vector<std::uint8_t>& Structure::table(const std::string& pred) const {
  auto it = tables_.find(pred);
  if (it == tables_.end()) throw InputError("predicate '" + pred + "' is not interpreted");
  return it->second;
}

std::vector<std::uint8_t>& Structure::table(const std::string& pred) {
  auto it = tables_.find(pred);
  if (it == tables_.end()) throw InputError("predicate '" + pred + "' is not interpreted");
  return it->second;
}

Structure Structure::expand(const Vocabulary& extra) const {
  Vocabulary v = vocab_;
  for (const auto& [name, arity] : extra) {
    if (v.count(name)) throw InputError("predicate '" + name + "' already interpreted");
    v[name] = arity;
  }
  Structure out(n_, v);
  for (const auto& [name, tab] : tables_) out.tables_[name] = tab;
  return out;
}

namespace {

class ModelReader {
 public:
  explicit ModelReader(std::string_view text) : text_(text) {}

  Structure read() {
    std::size_t n = 0;
    bool have_domain = false;
    struct Block {
      std::string name;
      unsigned arity;
      std::vector<Tuple> tuples;
    };
    std::vector<Block> blocks;
    std::string word;
    while (next_word(word)) {
      if (word == "domain") {
        if (have_domain) fail("duplicate domain line");
        long v = read_number();
        if (v <= 0) fail("empty domain");
        n = static_cast<std::size_t>(v);
        have_domain = true;
      } else if (word == "rel") {
        Block b;
        if (!next_word(b.name)) fail("expected relation name");
        for (const auto& o : blocks)
          if (o.name == b.name) fail("duplicate relation block '" + b.name + "'");
        long a = read_number();
        if (a < 0) fail("negative arity");
        b.arity = static_cast<unsigned>(a);
        expect('{');
        for (;;) {
          skip_space();
          if (peek() == '}') {
            ++pos_;
            break;
          }
          Tuple t;
          if (peek() == '(') {
            ++pos_;
            skip_space();
            if (peek() != ')') {
              for (;;) {
                t.push_back(static_cast<Element>(read_element()));
                skip_space();
                if (peek() == ',') {
                  ++pos_;
                  continue;
                }
                break;
              }
            }
            expect(')');
          } else if (std::isdigit(static_cast<unsigned char>(peek()))) {
            t.push_back(static_cast<Element>(read_element()));
          } else {
            fail("expected a tuple or '}'");
          }
          if (t.size() != b.arity)
            fail("arity mismatch in relation '" + b.name + "': tuple of size " + std::to_string(t.size()) +
                 ", declared " + std::to_string(b.arity));
          b.tuples.push_back(std::move(t));
        }
        blocks.push_back(std::move(b));
      } else {
        fail("unexpected '" + word + "'");
      }
    }
    if (!have_domain) fail("missing domain line");
    Vocabulary vocab;
    for (const auto& b : blocks) vocab[b.name] = b.arity;
    Structure m(n, vocab);
    for (const auto& b : blocks)
      for (const auto& t : b.tuples) {
        for (auto e : t)
          if (e >= n)
            throw InputError("element " + std::to_string(e) + " out of range in relation '" + b.name +
                             "' (domain " + std::to_string(n) + ")");
        m.set(b.name, t);
      }
    return m;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const {
    throw InputError("model line " + std::to_string(line()) + ": " + msg);
  }

  std::size_t line() const {
    std::size_t l = 1;
    for (std::size_t i = 0; i < pos_ && i < text_.size(); ++i)
      if (text_[i] == '\n') ++l;
    return l;
  }

  char peek() const { return pos_ < text_.size() ? text_[pos_] : '\0'; }

  void skip_space() {
    while (pos_ < text_.size()) {
      char c = text_[pos_];
      if (c == '#') {
        while (pos_ < text_.size() && text_[pos_] != '\n') ++pos_;
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        ++pos_;
      } else {
        break;
      }
    }
  }

  bool next_word(std::string& out) {
    skip_space();
    if (pos_ >= text_.size()) return false;
    std::size_t start = pos_;
    while (pos_ < text_.size() && (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
      ++pos_;
    if (start == pos_) fail(std::string("unexpected character '") + text_[pos_] + "'");
    out = std::string(text_.substr(start, pos_ - start));
    return true;
  }

  long read_number() {
    skip_space();
    bool neg = false;
    if (peek() == '-') {
      neg = true;
      ++pos_;
    }
    if (!std::isdigit(static_cast<unsigned char>(peek()))) fail("expected a number");
    long v = 0;
    while (std::isdigit(static_cast<unsigned char>(peek()))) {
      v = v * 10 + (text_[pos_] - '0');
      if (v > 1000000) fail("number too large");
      ++pos_;
    }
    return neg ? -v : v;
  }

  long read_element() {
    long v = read_number();
    if (v < 0) fail("negative element");
    return v;
  }

  void expect(char c) {
    skip_space();
    if (peek() != c) fail(std::string("expected '") + c + "'");
    ++pos_;
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace

Structure parse_structure(std::string_view text) { return ModelReader(text).read(); }

std::string print_structure(const Structure& m) {
  std::ostringstream out;
  out << "domain " << m.domain_size() << "\n";
  for (const auto& [name, arity] : m.vocabulary()) {
    out << "rel " << name << " " << arity << " {";
    for (const auto& t : m.tuples(name)) {
      out << " (";
      for (std::size_t i = 0; i < t.size(); ++i) out << (i ? "," : "") << t[i];
      out << ")";
    }
    out << " }\n";
  }
  return out.str();
}

Assignment parse_assignment(std::string_view text) {
  Assignment s;
  std::string cur;
  std::string all(text);
  std::stringstream ss(all);
  while (std::getline(ss, cur, ',')) {
    auto trim = [](std::string x) {
      while (!x.empty() && std::isspace(static_cast<unsigned char>(x.back()))) x.pop_back();
      std::size_t i = 0;
      while (i < x.size() && std::isspace(static_cast<unsigned char>(x[i]))) ++i;
      return x.substr(i);
    };
    cur = trim(cur);
    if (cur.empty()) continue;
    auto eq = cur.find('=');
    if (eq == std::string::npos) throw InputError("malformed assignment entry '" + cur + "'");
    std::string var = trim(cur.substr(0, eq));
    std::string val = trim(cur.substr(eq + 1));
    if (var.empty() || !std::islower(static_cast<unsigned char>(var[0])))
      throw InputError("malformed assignment variable '" + var + "'");
    if (val.empty() || val.find_first_not_of("0123456789") != std::string::npos)
      throw InputError("malformed assignment value '" + val + "'");
    if (!s.emplace(var, static_cast<Element>(std::stoul(val))).second)
      throw InputError("variable '" + var + "' assigned twice");
  }
  return s;
}

std::string print_assignment(const Assignment& s) {
  std::string out;
  for (const auto& [v, e] : s) {
    if (!out.empty()) out += ',';
    out += v + "=" + std::to_string(e);
  }
  return out;
}

void check_suitable(const Structure& m, const Assignment& s, const Formula& f) {
  for (const auto& [pred, arity] : vocabulary_of(f)) {
    auto it = m.vocabulary().find(pred);
    if (it == m.vocabulary().end()) throw InputError("structure does not interpret predicate '" + pred + "'");
    if (it->second != arity)
      throw InputError("predicate '" + pred + "' has arity " + std::to_string(it->second) +
                       " in the structure but " + std::to_string(arity) + " in the formula");
  }
  for (const auto& v : free_variables(f)) {
    auto it = s.find(v);
    if (it == s.end()) throw InputError("assignment does not cover free variable '" + v + "'");
  }
  for (const auto& [v, e] : s)
    if (e >= m.domain_size())
      throw InputError("assignment value " + std::to_string(e) + " for '" + v + "' out of range");
}

FoEvaluator::FoEvaluator(const Formula& f) {
  if (!is_pure_fo(f)) throw InputError("formula is not pure first-order");
  vars_ = all_variables(f);
  std::unordered_map<const Node*, int> memo;
  std::map<std::string, int> pred_ids;
  auto var_id = [&](const Variable& v) {
    for (std::size_t i = 0; i < vars_.size(); ++i)
      if (vars_[i] == v) return static_cast<int>(i);
    return -1;
  };
  std::function<int(const Formula&)> compile = [&](const Formula& g) -> int {
    auto it = memo.find(g.node());
    if (it != memo.end()) return it->second;
    Op op;
    op.kind = g.kind();
    if (g.arity() > 0) op.a = compile(g.child(0));
    if (g.arity() > 1) op.b = compile(g.child(1));
    if (g.is_quantifier()) op.var = var_id(g.var());
    for (const auto& a : g.args()) op.args.push_back(var_id(a));
    if (g.is(Kind::Atom)) {
      auto [pit, inserted] = pred_ids.emplace(g.predicate(), static_cast<int>(preds_.size()));
      if (inserted) {
        preds_.push_back(g.predicate());
        pred_arity_.push_back(static_cast<unsigned>(g.args().size()));
      }
      op.pred = pit->second;
    }
    int id = static_cast<int>(ops_.size());
    ops_.push_back(std::move(op));
    memo.emplace(g.node(), id);
    return id;
  };
  root_ = compile(f);
}

bool FoEvaluator::run(int i, std::vector<Element>& env, const std::vector<const std::vector<std::uint8_t>*>& tables,
                      std::size_t n) const {
  const Op& op = ops_[i];
  switch (op.kind) {
    case Kind::Falsum: return false;
    case Kind::Atom: {
      std::size_t idx = 0;
      for (int a : op.args) idx = idx * n + env[a];
      return (*tables[op.pred])[idx] != 0;
    }
    case Kind::Equal: return env[op.args[0]] == env[op.args[1]];
    case Kind::Not: return !run(op.a, env, tables, n);
    case Kind::And: return run(op.a, env, tables, n) && run(op.b, env, tables, n);
    case Kind::Or: return run(op.a, env, tables, n) || run(op.b, env, tables, n);
    case Kind::Exists:
    case Kind::Forall: {
      bool ex = op.kind == Kind::Exists;
      Element saved = env[op.var];
      bool result = !ex;
      for (Element e = 0; e < n; ++e) {
        env[op.var] = e;
        if (run(op.a, env, tables, n) == ex) {
          result = ex;
          break;
        }
      }
      env[op.var] = saved;
      return result;
    }
    default: return false;
  }
}

bool FoEvaluator::eval(const Structure& m, const Assignment& s) const {
  std::vector<const std::vector<std::uint8_t>*> tables;
  for (std::size_t i = 0; i < preds_.size(); ++i) {
    if (m.arity(preds_[i]) != pred_arity_[i])
      throw InputError("predicate '" + preds_[i] + "' has the wrong arity in the structure");
    tables.push_back(&m.table(preds_[i]));
  }
  std::vector<Element> env(vars_.size(), 0);
  for (std::size_t i = 0; i < vars_.size(); ++i) {
    auto it = s.find(vars_[i]);
    if (it != s.end()) {
      if (it->second >= m.domain_size()) throw InputError("assignment value out of range for '" + vars_[i] + "'");
      env[i] = it->second;
    }
  }
  return run(root_, env, tables, m.domain_size());
}

bool tarski_eval(const Structure& m, const Assignment& s, const Formula& f) {
  if (!is_pure_fo(f)) throw InputError("tarski_eval requires a pure first-order formula");
  check_suitable(m, s, f);
  return FoEvaluator(f).eval(m, s);
}

StructureEnumerator::StructureEnumerator(Vocabulary vocab, std::size_t max_size, std::size_t min_size)
    : vocab_(std::move(vocab)), max_size_(max_size), size_(min_size == 0 ? 1 : min_size) {}

bool StructureEnumerator::start_size() {
  bits_ = 0;
  for (const auto& [name, arity] : vocab_) {
    (void)name;
    bits_ += power(size_, arity);
  }
  if (bits_ > 62) throw BudgetError("too many structures to enumerate at domain size " + std::to_string(size_));
  limit_ = std::uint64_t{1} << bits_;
  counter_ = 0;
  return true;
}

bool StructureEnumerator::next(Structure& out) {
  if (!started_) {
    started_ = true;
    if (size_ > max_size_) return false;
    start_size();
  }
  if (counter_ >= limit_) {
    ++size_;
    if (size_ > max_size_) return false;
    start_size();
  }
  Structure m(size_, vocab_);
  std::size_t bit = 0;
  for (const auto& [name, arity] : vocab_) {
    (void)arity;
    auto& tab = m.table(name);
    for (auto& cell : tab) cell = static_cast<std::uint8_t>((counter_ >> bit++) & 1u);
  }
  ++counter_;
  out = std::move(m);
  return true;
}

std::vector<Structure> enumerate_structures(const Vocabulary& vocab, std::size_t max_size) {
  std::vector<Structure> out;
  StructureEnumerator e(vocab, max_size);
  Structure m(1, vocab);
  while (e.next(m)) out.push_back(m);
  return out;
}

std::uint64_t structure_count(const Vocabulary& vocab, std::size_t max_size) {
  std::uint64_t total = 0;
  for (std::size_t n = 1; n <= max_size; ++n) {
    std::size_t bits = 0;
    for (const auto& [name, arity] : vocab) {
      (void)name;
      bits += power(n, arity);
    }
    if (bits >= 63) return UINT64_MAX;
    total += std::uint64_t{1} << bits;
    if (total >= (std::uint64_t{1} << 63)) return UINT64_MAX;
  }
  return total;
}

std::vector<Assignment> all_assignments(const std::vector<Variable>& vars, std::size_t domain_size) {
  std::vector<Assignment> out;
  std::vector<Element> cur(vars.size(), 0);
  for (;;) {
    Assignment s;
    for (std::size_t i = 0; i < vars.size(); ++i) s[vars[i]] = cur[i];
    out.push_back(std::move(s));
    std::size_t i = vars.size();
    while (i > 0) {
      --i;
      if (++cur[i] < domain_size) break;
      cur[i] = 0;
      if (i == 0) return out;
    }
    if (vars.empty()) return out;
  }
}

}  // namespace loopfo
