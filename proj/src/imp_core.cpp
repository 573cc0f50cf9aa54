#include "sacks/imp_core.hpp"

#include <algorithm>
#include <bit>
#include <cctype>
#include <unordered_set>
#include <utility>

#include "sacks/error.hpp"

namespace sacks {

// ---------------------------------------------------------------------------
// Codes and structures

bool code_member(SetCode x, SetCode y) { return x < 64 && ((y >> x) & 1U) != 0; }

SetCode code_of(std::span<const SetCode> elements) {
  SetCode out = 0;
  for (const auto e : elements) {
    if (e >= 64) fail(ErrorKind::Resource, "set code " + std::to_string(e) + " does not fit a 64-bit member mask");
    out |= SetCode{1} << e;
  }
  return out;
}

std::vector<SetCode> code_elements(SetCode x) {
  std::vector<SetCode> out;
  for (SetCode i = 0; i < 64; ++i) {
    if ((x >> i) & 1U) out.push_back(i);
  }
  return out;
}

std::string code_to_string(SetCode x) {
  std::string out = "{";
  bool first = true;
  for (const auto e : code_elements(x)) {
    if (!first) out += ',';
    first = false;
    out += code_to_string(e);
  }
  return out + "}";
}

FinStructure::FinStructure(std::vector<SetCode> universe) : universe_(std::move(universe)) {
  std::sort(universe_.begin(), universe_.end());
  universe_.erase(std::unique(universe_.begin(), universe_.end()), universe_.end());
}

std::optional<std::size_t> FinStructure::index_of(SetCode x) const {
  const auto it = std::lower_bound(universe_.begin(), universe_.end(), x);
  if (it == universe_.end() || *it != x) return std::nullopt;
  return static_cast<std::size_t>(it - universe_.begin());
}

bool FinStructure::is_transitive() const {
  for (const auto x : universe_) {
    for (const auto e : code_elements(x)) {
      if (!index_of(e)) return false;
    }
  }
  return true;
}

SetCode subset_code(const FinStructure& x, Subset s) {
  std::vector<SetCode> elements;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if ((s >> i) & 1U) elements.push_back(x.universe()[i]);
  }
  return code_of(elements);
}

// ---------------------------------------------------------------------------
// Parser

namespace {

bool is_ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) != 0 || c == '_'; }
bool is_ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) != 0 || c == '_'; }

class Parser {
 public:
  explicit Parser(std::string_view text) : text_(text) {}

  Formula parse() {
    Formula f = iff();
    skip();
    if (pos_ != text_.size()) throw SyntaxError(pos_, "unexpected '" + std::string(1, text_[pos_]) + "'");
    return f;
  }

 private:
  void skip() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_])) != 0) ++pos_;
  }

  bool accept(std::string_view tok) {
    skip();
    if (text_.substr(pos_, tok.size()) != tok) return false;
    // Keywords must not run into an identifier.
    if (is_ident_start(tok.front()) && pos_ + tok.size() < text_.size() && is_ident_char(text_[pos_ + tok.size()]))
      return false;
    pos_ += tok.size();
    return true;
  }

  void expect(std::string_view tok) {
    if (!accept(tok)) throw SyntaxError(pos_, "expected '" + std::string(tok) + "'");
  }

  bool at_keyword_call(std::string_view kw) {
    skip();
    if (text_.substr(pos_, kw.size()) != kw) return false;
    std::size_t p = pos_ + kw.size();
    if (p < text_.size() && is_ident_char(text_[p])) return false;
    while (p < text_.size() && std::isspace(static_cast<unsigned char>(text_[p])) != 0) ++p;
    return p < text_.size() && text_[p] == '(';
  }

  std::string ident() {
    skip();
    const std::size_t start = pos_;
    if (pos_ >= text_.size() || !is_ident_start(text_[pos_])) throw SyntaxError(pos_, "expected a variable");
    while (pos_ < text_.size() && is_ident_char(text_[pos_])) ++pos_;
    std::string name(text_.substr(start, pos_ - start));
    if (name == "all" || name == "ex" || name == "in" || name == "S")
      throw SyntaxError(start, "'" + name + "' is reserved");
    return name;
  }

  Term term() {
    skip();
    if (pos_ < text_.size() && text_[pos_] == '#') {
      const std::size_t start = ++pos_;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_])) != 0) ++pos_;
      if (pos_ == start || pos_ - start > 9) throw SyntaxError(start, "expected a parameter number");
      return Term::parameter(std::stoul(std::string(text_.substr(start, pos_ - start))));
    }
    return Term::variable(ident());
  }

  Formula iff() {
    Formula f = implies();
    while (accept("<->")) f = Formula::binary(Formula::Op::Iff, std::move(f), implies());
    return f;
  }

  Formula implies() {
    Formula f = disjunction();
    if (accept("->")) return Formula::binary(Formula::Op::Implies, std::move(f), implies());
    return f;
  }

  Formula disjunction() {
    Formula f = conjunction();
    while (accept("|")) f = Formula::binary(Formula::Op::Or, std::move(f), conjunction());
    return f;
  }

  Formula conjunction() {
    Formula f = unary();
    while (accept("&")) f = Formula::binary(Formula::Op::And, std::move(f), unary());
    return f;
  }

  Formula unary() {
    if (accept("!")) return Formula::negation(unary());
    for (const auto& [kw, op] : {std::pair{"all", Formula::Op::Forall}, std::pair{"ex", Formula::Op::Exists}}) {
      if (accept(kw)) {
        std::string v = ident();
        expect(".");
        return Formula::quantifier(op, std::move(v), iff());
      }
    }
    if (accept("(")) {
      Formula f = iff();
      expect(")");
      return f;
    }
    if (at_keyword_call("S")) {
      expect("S");
      expect("(");
      Term t = term();
      expect(")");
      return Formula::pred(std::move(t));
    }
    skip();
    if (pos_ >= text_.size()) throw SyntaxError(pos_, "unexpected end of formula");
    Term a = term();
    if (accept("in")) return Formula::in(std::move(a), term());
    if (accept("=")) return Formula::eq(std::move(a), term());
    throw SyntaxError(pos_, "expected 'in' or '=' after a term");
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

std::string term_string(const Term& t) { return t.is_param ? "#" + std::to_string(t.param) : t.var; }

std::string print(const Formula& f, bool top) {
  using Op = Formula::Op;
  const auto wrap = [top](std::string s) { return top ? s : "(" + s + ")"; };
  switch (f.op) {
    case Op::In: return term_string(f.terms[0]) + " in " + term_string(f.terms[1]);
    case Op::Eq: return term_string(f.terms[0]) + " = " + term_string(f.terms[1]);
    case Op::Pred: return "S(" + term_string(f.terms[0]) + ")";
    case Op::Not: return "!" + print(f.kids[0], false);
    case Op::And: return wrap(print(f.kids[0], false) + " & " + print(f.kids[1], false));
    case Op::Or: return wrap(print(f.kids[0], false) + " | " + print(f.kids[1], false));
    case Op::Implies: return wrap(print(f.kids[0], false) + " -> " + print(f.kids[1], false));
    case Op::Iff: return wrap(print(f.kids[0], false) + " <-> " + print(f.kids[1], false));
    case Op::Forall: return wrap("all " + f.var + ". " + print(f.kids[0], true));
    case Op::Exists: return wrap("ex " + f.var + ". " + print(f.kids[0], true));
  }
  return {};
}

}  // namespace

Formula parse_formula(std::string_view text) { return Parser(text).parse(); }

std::string to_string(const Formula& f) { return print(f, true); }

std::size_t formula_size(const Formula& f) {
  std::size_t n = 1 + f.terms.size();
  for (const auto& k : f.kids) n += formula_size(k);
  return n;
}

std::size_t param_slots_used(const Formula& f) {
  std::size_t n = 0;
  for (const auto& t : f.terms) {
    if (t.is_param) n = std::max(n, t.param + 1);
  }
  for (const auto& k : f.kids) n = std::max(n, param_slots_used(k));
  return n;
}

// ---------------------------------------------------------------------------
// Evaluation

namespace {

struct Evaluator {
  const FinStructure& x;
  Subset s;
  std::vector<std::size_t> params;
  std::vector<std::pair<std::string_view, std::size_t>> env;

  std::size_t value(const Term& t) const {
    if (t.is_param) return params[t.param];
    for (auto it = env.rbegin(); it != env.rend(); ++it) {
      if (it->first == t.var) return it->second;
    }
    fail(ErrorKind::Domain, "free variable '" + t.var + "'");
  }

  bool eval(const Formula& f) {
    using Op = Formula::Op;
    switch (f.op) {
      case Op::In: return x.member(value(f.terms[0]), value(f.terms[1]));
      case Op::Eq: return value(f.terms[0]) == value(f.terms[1]);
      case Op::Pred: return ((s >> value(f.terms[0])) & 1U) != 0;
      case Op::Not: return !eval(f.kids[0]);
      case Op::And: return eval(f.kids[0]) && eval(f.kids[1]);
      case Op::Or: return eval(f.kids[0]) || eval(f.kids[1]);
      case Op::Implies: return !eval(f.kids[0]) || eval(f.kids[1]);
      case Op::Iff: return eval(f.kids[0]) == eval(f.kids[1]);
      case Op::Forall:
      case Op::Exists: {
        const bool universal = f.op == Op::Forall;
        env.emplace_back(f.var, 0);
        bool result = universal;
        for (std::size_t e = 0; e < x.size(); ++e) {
          env.back().second = e;
          if (eval(f.kids[0]) != universal) {
            result = !universal;
            break;
          }
        }
        env.pop_back();
        return result;
      }
    }
    return false;
  }
};

void check_free_variables(const Formula& f, std::vector<std::string_view>& bound) {
  for (const auto& t : f.terms) {
    if (!t.is_param && std::find(bound.begin(), bound.end(), t.var) == bound.end())
      fail(ErrorKind::Domain, "free variable '" + t.var + "'");
  }
  if (f.op == Formula::Op::Forall || f.op == Formula::Op::Exists) bound.push_back(f.var);
  for (const auto& k : f.kids) check_free_variables(k, bound);
  if (f.op == Formula::Op::Forall || f.op == Formula::Op::Exists) bound.pop_back();
}

Evaluator make_evaluator(const Formula& f, const FinStructure& x, std::span<const SetCode> params) {
  if (param_slots_used(f) > params.size())
    fail(ErrorKind::Domain, "formula uses #" + std::to_string(param_slots_used(f) - 1) + " but only " +
                                std::to_string(params.size()) + " parameters are given");
  std::vector<std::string_view> bound;
  check_free_variables(f, bound);
  Evaluator ev{x, 0, {}, {}};
  for (const auto p : params) {
    const auto i = x.index_of(p);
    if (!i) fail(ErrorKind::Domain, "parameter " + code_to_string(p) + " is not in the universe");
    ev.params.push_back(*i);
  }
  return ev;
}

}  // namespace

bool eval_formula(const Formula& f, const FinStructure& x, Subset s, std::span<const SetCode> params) {
  if (x.size() < 64 && (s >> x.size()) != 0) fail(ErrorKind::Domain, "S is not a subset of the universe");
  Evaluator ev = make_evaluator(f, x, params);
  ev.s = s;
  return ev.eval(f);
}

std::optional<Subset> implicitly_defined_by(const FinStructure& x, const Formula& f,
                                            std::span<const SetCode> params) {
  if (x.size() > 24) fail(ErrorKind::Resource, "2^" + std::to_string(x.size()) + " subsets are too many to sweep");
  Evaluator ev = make_evaluator(f, x, params);
  std::optional<Subset> found;
  for (Subset s = 0; s < (Subset{1} << x.size()); ++s) {
    ev.s = s;
    if (!ev.eval(f)) continue;
    if (found) return std::nullopt;
    found = s;
  }
  return found;
}

// ---------------------------------------------------------------------------
// Bounded search by truth tables
//
// For a fixed parameter tuple, the meaning of a formula whose free variables
// lie among v0..v(m-1) is a table indexed by (assignment, S). Formulas with
// equal tables and equal free-variable sets are interchangeable inside any
// larger formula, so each size keeps one representative per meaning.

namespace {

std::string var_name(std::size_t i) {
  static constexpr std::string_view names = "xyzw";
  return i < names.size() ? std::string(1, names[i]) : "v" + std::to_string(i);
}

class TableSearch {
 public:
  TableSearch(const FinStructure& x, const ImpBounds& bounds, std::vector<std::size_t> tuple)
      : x_(x), bounds_(bounds), tuple_(std::move(tuple)), u_(x.size()), m_(bounds.var_slots),
        terms_(m_ + tuple_.size()), dedup_(64, Hash{this}, Eq{this}) {
    assignments_ = 1;
    for (std::size_t i = 0; i < m_; ++i) assignments_ *= u_;
    row_bits_ = std::size_t{1} << u_;
    const std::size_t bits = assignments_ * row_bits_;
    words_ = (bits + 63) / 64;
    tail_ = bits % 64 == 0 ? ~std::uint64_t{0} : (std::uint64_t{1} << (bits % 64)) - 1;
    contains_.assign(u_, std::vector<std::uint64_t>(row_words(), 0));
    for (std::size_t e = 0; e < u_; ++e) {
      for (std::size_t s = 0; s < row_bits_; ++s) {
        if ((s >> e) & 1U) contains_[e][s / 64] |= std::uint64_t{1} << (s % 64);
      }
    }
    by_size_.resize(bounds.budget + 1);
  }

  /// Calls found(subset, entry) for every closed entry defining a unique
  /// subset; stops when found returns true.
  template <typename F>
  void run(F&& found) {
    for (std::size_t size = 2; size <= bounds_.budget; ++size) {
      grow(size);
      for (const auto id : by_size_[size]) {
        const auto& e = entries_[id];
        if (e.free != 0) continue;
        const auto s = unique_subset(id);
        if (s && found(*s, id)) return;
      }
    }
  }

  Formula formula(std::uint32_t id) const {
    const auto& e = entries_[id];
    using Op = Formula::Op;
    switch (e.op) {
      case Op::In: return Formula::in(term(e.t1), term(e.t2));
      case Op::Eq: return Formula::eq(term(e.t1), term(e.t2));
      case Op::Pred: return Formula::pred(term(e.t1));
      case Op::Not: return Formula::negation(formula(e.a));
      case Op::Forall:
      case Op::Exists: return Formula::quantifier(e.op, var_name(e.t1), formula(e.a));
      default: return Formula::binary(e.op, formula(e.a), formula(e.b));
    }
  }

 private:
  struct Entry {
    Formula::Op op;
    std::uint8_t t1 = 0, t2 = 0;
    std::uint32_t free = 0;
    std::uint32_t a = 0, b = 0;
  };

  struct Hash {
    const TableSearch* self;
    std::size_t operator()(std::uint32_t id) const {
      const std::uint64_t* w = self->table(id);
      std::uint64_t h = self->entries_[id].free * 0x9e3779b97f4a7c15ULL;
      for (std::size_t i = 0; i < self->words_; ++i) h = (h ^ w[i]) * 0x100000001b3ULL + (h >> 29);
      return static_cast<std::size_t>(h);
    }
  };
  struct Eq {
    const TableSearch* self;
    bool operator()(std::uint32_t a, std::uint32_t b) const {
      return self->entries_[a].free == self->entries_[b].free &&
             std::equal(self->table(a), self->table(a) + self->words_, self->table(b));
    }
  };

  std::size_t row_words() const { return (row_bits_ + 63) / 64; }
  const std::uint64_t* table(std::uint32_t id) const { return arena_.data() + std::size_t{id} * words_; }

  Term term(std::size_t t) const { return t < m_ ? Term::variable(var_name(t)) : Term::parameter(t - m_); }

  std::size_t digit(std::size_t assignment, std::size_t v) const {
    for (std::size_t i = 0; i < v; ++i) assignment /= u_;
    return assignment % u_;
  }

  std::size_t value(std::size_t t, std::size_t assignment) const {
    return t < m_ ? digit(assignment, t) : tuple_[t - m_];
  }

  void get_row(const std::uint64_t* w, std::size_t a, std::uint64_t* out) const {
    if (row_bits_ < 64) {
      const std::size_t bit = a * row_bits_;
      out[0] = (w[bit / 64] >> (bit % 64)) & ((std::uint64_t{1} << row_bits_) - 1);
    } else {
      std::copy_n(w + a * row_words(), row_words(), out);
    }
  }

  void or_row(std::uint64_t* w, std::size_t a, const std::uint64_t* row) const {
    if (row_bits_ < 64) {
      const std::size_t bit = a * row_bits_;
      w[bit / 64] |= row[0] << (bit % 64);
    } else {
      for (std::size_t i = 0; i < row_words(); ++i) w[a * row_words() + i] |= row[i];
    }
  }

  // Scratch table at the end of the arena; kept when its meaning is new.
  std::uint64_t* begin_candidate() {
    arena_.resize(arena_.size() + words_, 0);
    return arena_.data() + arena_.size() - words_;
  }

  void commit(Entry e, std::size_t size) {
    arena_[arena_.size() - 1] &= tail_;
    const auto id = static_cast<std::uint32_t>(entries_.size());
    entries_.push_back(e);
    if (dedup_.insert(id).second) {
      by_size_[size].push_back(id);
    } else {
      entries_.pop_back();
      arena_.resize(arena_.size() - words_);
    }
  }

  std::uint32_t term_free(std::size_t t) const { return t < m_ ? std::uint32_t{1} << t : 0U; }

  void atom(Formula::Op op, std::size_t t1, std::size_t t2, std::size_t size) {
    std::uint64_t* w = begin_candidate();
    std::vector<std::uint64_t> ones(row_words(), ~std::uint64_t{0});
    if (row_bits_ < 64) ones[0] = (std::uint64_t{1} << row_bits_) - 1;
    for (std::size_t a = 0; a < assignments_; ++a) {
      const std::size_t e1 = value(t1, a);
      if (op == Formula::Op::Pred) {
        or_row(w, a, contains_[e1].data());
        continue;
      }
      const std::size_t e2 = value(t2, a);
      const bool holds = op == Formula::Op::In ? x_.member(e1, e2) : e1 == e2;
      if (holds) or_row(w, a, ones.data());
    }
    Entry e{op, static_cast<std::uint8_t>(t1), static_cast<std::uint8_t>(t2), term_free(t1), 0, 0};
    if (op != Formula::Op::Pred) e.free |= term_free(t2);
    commit(e, size);
  }

  void negation(std::uint32_t c, std::size_t size) {
    std::uint64_t* w = begin_candidate();
    const std::uint64_t* src = table(c);
    for (std::size_t i = 0; i < words_; ++i) w[i] = ~src[i];
    commit(Entry{Formula::Op::Not, 0, 0, entries_[c].free, c, 0}, size);
  }

  void binary(Formula::Op op, std::uint32_t c1, std::uint32_t c2, std::size_t size) {
    std::uint64_t* w = begin_candidate();
    const std::uint64_t* p = table(c1);
    const std::uint64_t* q = table(c2);
    for (std::size_t i = 0; i < words_; ++i) {
      switch (op) {
        case Formula::Op::And: w[i] = p[i] & q[i]; break;
        case Formula::Op::Or: w[i] = p[i] | q[i]; break;
        case Formula::Op::Implies: w[i] = ~p[i] | q[i]; break;
        default: w[i] = ~(p[i] ^ q[i]); break;
      }
    }
    commit(Entry{op, 0, 0, entries_[c1].free | entries_[c2].free, c1, c2}, size);
  }

  void quantify(Formula::Op op, std::size_t v, std::uint32_t c, std::size_t size) {
    std::uint64_t* w = begin_candidate();
    const std::uint64_t* src = table(c);
    std::size_t stride = 1;
    for (std::size_t i = 0; i < v; ++i) stride *= u_;
    const std::size_t rw = row_words();
    std::vector<std::uint64_t> acc(rw), row(rw);
    for (std::size_t a = 0; a < assignments_; ++a) {
      const std::size_t base = a - digit(a, v) * stride;
      for (std::size_t e = 0; e < u_; ++e) {
        get_row(src, base + e * stride, row.data());
        for (std::size_t i = 0; i < rw; ++i) {
          if (e == 0) acc[i] = row[i];
          else if (op == Formula::Op::Forall) acc[i] &= row[i];
          else acc[i] |= row[i];
        }
      }
      or_row(w, a, acc.data());
    }
    commit(Entry{op, static_cast<std::uint8_t>(v), 0, entries_[c].free & ~(std::uint32_t{1} << v), c, 0}, size);
  }

  void grow(std::size_t size) {
    using Op = Formula::Op;
    if (size == 2) {
      for (std::size_t t = 0; t < terms_; ++t) atom(Op::Pred, t, 0, size);
    }
    if (size == 3) {
      for (std::size_t t1 = 0; t1 < terms_; ++t1) {
        for (std::size_t t2 = 0; t2 < terms_; ++t2) {
          atom(Op::In, t1, t2, size);
          atom(Op::Eq, t1, t2, size);
        }
      }
    }
    // Children are addressed by index: the arena may move while growing.
    const auto& prev = by_size_[size - 1];
    for (std::size_t i = 0; i < prev.size(); ++i) {
      const auto c = by_size_[size - 1][i];
      negation(c, size);
      for (std::size_t v = 0; v < m_; ++v) {
        if ((entries_[c].free >> v) & 1U) {
          quantify(Op::Forall, v, c, size);
          quantify(Op::Exists, v, c, size);
        }
      }
    }
    for (std::size_t s1 = 2; s1 + 2 < size; ++s1) {
      const std::size_t s2 = size - 1 - s1;
      const std::size_t n1 = by_size_[s1].size();
      const std::size_t n2 = by_size_[s2].size();
      for (std::size_t i = 0; i < n1; ++i) {
        for (std::size_t j = 0; j < n2; ++j) {
          const auto c1 = by_size_[s1][i];
          const auto c2 = by_size_[s2][j];
          binary(Op::Implies, c1, c2, size);
          // Symmetric connectives need one order only.
          if (s1 < s2 || (s1 == s2 && i <= j)) {
            binary(Op::And, c1, c2, size);
            binary(Op::Or, c1, c2, size);
            binary(Op::Iff, c1, c2, size);
          }
        }
      }
    }
  }

  std::optional<Subset> unique_subset(std::uint32_t id) const {
    std::vector<std::uint64_t> row(row_words());
    get_row(table(id), 0, row.data());
    std::size_t ones = 0;
    Subset found = 0;
    for (std::size_t i = 0; i < row.size(); ++i) {
      ones += static_cast<std::size_t>(std::popcount(row[i]));
      if (row[i] != 0) found = i * 64 + static_cast<Subset>(std::countr_zero(row[i]));
    }
    if (ones != 1) return std::nullopt;
    return found;
  }

  const FinStructure& x_;
  ImpBounds bounds_;
  std::vector<std::size_t> tuple_;
  std::size_t u_, m_, terms_;
  std::size_t assignments_ = 1, row_bits_ = 1, words_ = 1;
  std::uint64_t tail_ = 0;
  std::vector<std::vector<std::uint64_t>> contains_;
  std::vector<Entry> entries_;
  std::vector<std::uint64_t> arena_;
  std::vector<std::vector<std::uint32_t>> by_size_;
  std::unordered_set<std::uint32_t, Hash, Eq> dedup_;
};

// Nondecreasing tuples suffice: permuting parameter numbers maps formulas of
// one size onto each other.
void sorted_tuples(std::size_t u, std::size_t k, std::size_t from, std::vector<std::size_t>& cur,
                   std::vector<std::vector<std::size_t>>& out) {
  if (cur.size() == k) {
    out.push_back(cur);
    return;
  }
  for (std::size_t e = from; e < u; ++e) {
    cur.push_back(e);
    sorted_tuples(u, k, e, cur, out);
    cur.pop_back();
  }
}

}  // namespace

std::map<Subset, ImpWitness> implicit_witnesses(const FinStructure& x, const ImpBounds& bounds) {
  if (x.size() > 8)
    fail(ErrorKind::Resource, "a universe of " + std::to_string(x.size()) + " elements is beyond the search limit of 8");
  if (bounds.var_slots > 8) fail(ErrorKind::Resource, "at most 8 variable slots are supported");
  std::map<Subset, ImpWitness> out;
  if (x.size() == 0) {
    // The only subset is empty; "all x. S(x)" is the smallest sentence true of it.
    if (bounds.budget >= 3 && bounds.var_slots > 0) out.emplace(0, ImpWitness{parse_formula("all x. S(x)"), {}});
    return out;
  }
  const std::size_t all = std::size_t{1} << x.size();
  std::vector<std::vector<std::size_t>> tuples;
  std::vector<std::size_t> cur;
  sorted_tuples(x.size(), bounds.param_slots, 0, cur, tuples);
  for (const auto& tuple : tuples) {
    TableSearch search(x, bounds, tuple);
    search.run([&](Subset s, std::uint32_t id) {
      if (!out.contains(s)) {
        std::vector<SetCode> params;
        for (const auto e : tuple) params.push_back(x.universe()[e]);
        out.emplace(s, ImpWitness{search.formula(id), std::move(params)});
      }
      return out.size() == all;
    });
    if (out.size() == all) break;
  }
  return out;
}

std::set<Subset> implicit_subsets(const FinStructure& x, const ImpBounds& bounds) {
  std::set<Subset> out;
  for (const auto& [s, _] : implicit_witnesses(x, bounds)) out.insert(s);
  return out;
}

std::vector<SetFamily> imp_levels(std::size_t n, const ImpBounds& bounds) {
  std::vector<SetFamily> levels{SetFamily{}};
  for (std::size_t k = 1; k <= n; ++k) {
    const FinStructure x(std::vector<SetCode>(levels.back().begin(), levels.back().end()));
    if (x.size() > 8)
      fail(ErrorKind::Resource, "level " + std::to_string(k) + " ranges over a universe of " +
                                    std::to_string(x.size()) + " elements");
    SetFamily next;
    for (const auto s : implicit_subsets(x, bounds)) next.insert(subset_code(x, s));
    levels.push_back(std::move(next));
  }
  return levels;
}

std::vector<SetFamily> vn_levels(std::size_t n) {
  if (n > 4) fail(ErrorKind::Resource, "V_" + std::to_string(n) + " has codes beyond 64 bits");
  std::vector<SetFamily> levels{SetFamily{}};
  for (std::size_t k = 1; k <= n; ++k) {
    const std::vector<SetCode> prev(levels.back().begin(), levels.back().end());
    SetFamily next;
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << prev.size()); ++mask) {
      std::vector<SetCode> members;
      for (std::size_t i = 0; i < prev.size(); ++i) {
        if ((mask >> i) & 1U) members.push_back(prev[i]);
      }
      next.insert(code_of(members));
    }
    levels.push_back(std::move(next));
  }
  return levels;
}

}  // namespace sacks
