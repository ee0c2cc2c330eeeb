#include "primwit/formula.hpp"

namespace primwit {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

}  // namespace

// ---------------------------------------------------------------------------
// Construction
// ---------------------------------------------------------------------------

Term Term::zero() {
  return Term(std::make_shared<const TermNode>(TermNode{Zero{}}));
}

Term Term::numeral(Nat n) {
  if (n < 0) throw Error("numeral: value must be a natural number");
  return Term(std::make_shared<const TermNode>(TermNode{Numeral{std::move(n)}}));
}

Term Term::var(std::string name) {
  if (name.empty()) throw Error("var: empty name");
  return Term(std::make_shared<const TermNode>(TermNode{Var{std::move(name)}}));
}

Term Term::constant(int index) {
  if (index < 1) throw Error("constant: index must be >= 1");
  return Term(std::make_shared<const TermNode>(TermNode{Const{index}}));
}

Term Term::succ(Term t) {
  return Term(std::make_shared<const TermNode>(TermNode{Succ{std::move(t)}}));
}

Term Term::add(Term lhs, Term rhs) {
  return Term(
      std::make_shared<const TermNode>(TermNode{Add{std::move(lhs), std::move(rhs)}}));
}

Term Term::mul(Term lhs, Term rhs) {
  return Term(
      std::make_shared<const TermNode>(TermNode{Mul{std::move(lhs), std::move(rhs)}}));
}

Sentence Sentence::eq(Term lhs, Term rhs) {
  return Sentence(std::make_shared<const SentenceNode>(
      SentenceNode{Eq{std::move(lhs), std::move(rhs)}}));
}
Sentence Sentence::negate(Sentence s) {
  return Sentence(
      std::make_shared<const SentenceNode>(SentenceNode{Not{std::move(s)}}));
}
Sentence Sentence::conj(Sentence lhs, Sentence rhs) {
  return Sentence(std::make_shared<const SentenceNode>(
      SentenceNode{And{std::move(lhs), std::move(rhs)}}));
}
Sentence Sentence::disj(Sentence lhs, Sentence rhs) {
  return Sentence(std::make_shared<const SentenceNode>(
      SentenceNode{Or{std::move(lhs), std::move(rhs)}}));
}
Sentence Sentence::implies(Sentence lhs, Sentence rhs) {
  return Sentence(std::make_shared<const SentenceNode>(
      SentenceNode{Implies{std::move(lhs), std::move(rhs)}}));
}
Sentence Sentence::forall(std::string var, Sentence body) {
  return Sentence(std::make_shared<const SentenceNode>(
      SentenceNode{ForAll{std::move(var), std::move(body)}}));
}
Sentence Sentence::exists(std::string var, Sentence body) {
  return Sentence(std::make_shared<const SentenceNode>(
      SentenceNode{Exists{std::move(var), std::move(body)}}));
}

// ---------------------------------------------------------------------------
// Structural equality
// ---------------------------------------------------------------------------

bool Term::operator==(const Term& other) const {
  if (node_ == other.node_) return true;
  const auto& a = node_->v;
  const auto& b = other.node_->v;
  if (a.index() != b.index()) return false;
  return std::visit(
      overloaded{
          [&](const Zero&) { return true; },
          [&](const Numeral& x) { return x.value == std::get<Numeral>(b).value; },
          [&](const Var& x) { return x.name == std::get<Var>(b).name; },
          [&](const Const& x) { return x.index == std::get<Const>(b).index; },
          [&](const Succ& x) { return x.child == std::get<Succ>(b).child; },
          [&](const Add& x) {
            const auto& y = std::get<Add>(b);
            return x.lhs == y.lhs && x.rhs == y.rhs;
          },
          [&](const Mul& x) {
            const auto& y = std::get<Mul>(b);
            return x.lhs == y.lhs && x.rhs == y.rhs;
          },
      },
      a);
}

bool Sentence::operator==(const Sentence& other) const {
  if (node_ == other.node_) return true;
  const auto& a = node_->v;
  const auto& b = other.node_->v;
  if (a.index() != b.index()) return false;
  return std::visit(
      overloaded{
          [&](const Eq& x) {
            const auto& y = std::get<Eq>(b);
            return x.lhs == y.lhs && x.rhs == y.rhs;
          },
          [&](const Not& x) { return x.sub == std::get<Not>(b).sub; },
          [&](const And& x) {
            const auto& y = std::get<And>(b);
            return x.lhs == y.lhs && x.rhs == y.rhs;
          },
          [&](const Or& x) {
            const auto& y = std::get<Or>(b);
            return x.lhs == y.lhs && x.rhs == y.rhs;
          },
          [&](const Implies& x) {
            const auto& y = std::get<Implies>(b);
            return x.lhs == y.lhs && x.rhs == y.rhs;
          },
          [&](const ForAll& x) {
            const auto& y = std::get<ForAll>(b);
            return x.var == y.var && x.body == y.body;
          },
          [&](const Exists& x) {
            const auto& y = std::get<Exists>(b);
            return x.var == y.var && x.body == y.body;
          },
      },
      a);
}

// ---------------------------------------------------------------------------
// Variables and constants
// ---------------------------------------------------------------------------

namespace {

void collect_vars(const Term& t, std::set<std::string>& out) {
  std::visit(overloaded{
                 [](const Zero&) {},
                 [](const Numeral&) {},
                 [&](const Var& v) { out.insert(v.name); },
                 [](const Const&) {},
                 [&](const Succ& s) { collect_vars(s.child, out); },
                 [&](const Add& a) {
                   collect_vars(a.lhs, out);
                   collect_vars(a.rhs, out);
                 },
                 [&](const Mul& m) {
                   collect_vars(m.lhs, out);
                   collect_vars(m.rhs, out);
                 },
             },
             t.node());
}

void collect_free(const Sentence& s, std::set<std::string> bound,
                  std::set<std::string>& out) {
  std::visit(
      overloaded{
          [&](const Eq& e) {
            std::set<std::string> vars;
            collect_vars(e.lhs, vars);
            collect_vars(e.rhs, vars);
            for (const auto& v : vars)
              if (!bound.count(v)) out.insert(v);
          },
          [&](const Not& n) { collect_free(n.sub, bound, out); },
          [&](const And& a) {
            collect_free(a.lhs, bound, out);
            collect_free(a.rhs, bound, out);
          },
          [&](const Or& o) {
            collect_free(o.lhs, bound, out);
            collect_free(o.rhs, bound, out);
          },
          [&](const Implies& i) {
            collect_free(i.lhs, bound, out);
            collect_free(i.rhs, bound, out);
          },
          [&](const ForAll& f) {
            auto inner = bound;
            inner.insert(f.var);
            collect_free(f.body, std::move(inner), out);
          },
          [&](const Exists& e) {
            auto inner = bound;
            inner.insert(e.var);
            collect_free(e.body, std::move(inner), out);
          },
      },
      s.node());
}

void collect_consts(const Term& t, std::set<int>& out) {
  std::visit(overloaded{
                 [](const Zero&) {},
                 [](const Numeral&) {},
                 [](const Var&) {},
                 [&](const Const& c) { out.insert(c.index); },
                 [&](const Succ& s) { collect_consts(s.child, out); },
                 [&](const Add& a) {
                   collect_consts(a.lhs, out);
                   collect_consts(a.rhs, out);
                 },
                 [&](const Mul& m) {
                   collect_consts(m.lhs, out);
                   collect_consts(m.rhs, out);
                 },
             },
             t.node());
}

void collect_consts_s(const Sentence& s, std::set<int>& out) {
  std::visit(overloaded{
                 [&](const Eq& e) {
                   collect_consts(e.lhs, out);
                   collect_consts(e.rhs, out);
                 },
                 [&](const Not& n) { collect_consts_s(n.sub, out); },
                 [&](const And& a) {
                   collect_consts_s(a.lhs, out);
                   collect_consts_s(a.rhs, out);
                 },
                 [&](const Or& o) {
                   collect_consts_s(o.lhs, out);
                   collect_consts_s(o.rhs, out);
                 },
                 [&](const Implies& i) {
                   collect_consts_s(i.lhs, out);
                   collect_consts_s(i.rhs, out);
                 },
                 [&](const ForAll& f) { collect_consts_s(f.body, out); },
                 [&](const Exists& e) { collect_consts_s(e.body, out); },
             },
             s.node());
}

}  // namespace

std::set<std::string> free_vars(const Term& t) {
  std::set<std::string> out;
  collect_vars(t, out);
  return out;
}

std::set<std::string> free_vars(const Sentence& s) {
  std::set<std::string> out;
  collect_free(s, {}, out);
  return out;
}

std::set<int> constant_indices(const Term& t) {
  std::set<int> out;
  collect_consts(t, out);
  return out;
}

std::set<int> constant_indices(const Sentence& s) {
  std::set<int> out;
  collect_consts_s(s, out);
  return out;
}

// ---------------------------------------------------------------------------
// Desugaring
// ---------------------------------------------------------------------------

namespace {

std::string fresh_var(const Term& a, const Term& b) {
  auto used = free_vars(a);
  for (const auto& v : free_vars(b)) used.insert(v);
  if (!used.count("z")) return "z";
  for (int i = 1;; ++i) {
    std::string candidate = "z" + std::to_string(i);
    if (!used.count(candidate)) return candidate;
  }
}

}  // namespace

Sentence desugar_le(const Term& a, const Term& b) {
  std::string z = fresh_var(a, b);
  return Sentence::exists(z, Sentence::eq(Term::add(a, Term::var(z)), b));
}

Sentence desugar_lt(const Term& a, const Term& b) {
  std::string z = fresh_var(a, b);
  return Sentence::exists(
      z, Sentence::eq(Term::add(Term::succ(a), Term::var(z)), b));
}

Sentence desugar_ge(const Term& a, const Term& b) { return desugar_le(b, a); }

Sentence desugar_gt(const Term& a, const Term& b) { return desugar_lt(b, a); }

// ---------------------------------------------------------------------------
// Numeral normalization
// ---------------------------------------------------------------------------

Term normalize_numerals(const Term& t) {
  return std::visit(
      overloaded{
          [&](const Zero&) { return Term::numeral(0); },
          [&](const Numeral& n) { return Term::numeral(n.value); },
          [&](const Var& v) { return Term::var(v.name); },
          [&](const Const& c) { return Term::constant(c.index); },
          [&](const Succ& s) {
            Term child = normalize_numerals(s.child);
            if (const auto* n = std::get_if<Numeral>(&child.node()))
              return Term::numeral(n->value + 1);
            return Term::succ(std::move(child));
          },
          [&](const Add& a) {
            return Term::add(normalize_numerals(a.lhs),
                             normalize_numerals(a.rhs));
          },
          [&](const Mul& m) {
            return Term::mul(normalize_numerals(m.lhs),
                             normalize_numerals(m.rhs));
          },
      },
      t.node());
}

Sentence normalize_numerals(const Sentence& s) {
  return std::visit(
      overloaded{
          [&](const Eq& e) {
            return Sentence::eq(normalize_numerals(e.lhs),
                                normalize_numerals(e.rhs));
          },
          [&](const Not& n) {
            return Sentence::negate(normalize_numerals(n.sub));
          },
          [&](const And& a) {
            return Sentence::conj(normalize_numerals(a.lhs),
                                  normalize_numerals(a.rhs));
          },
          [&](const Or& o) {
            return Sentence::disj(normalize_numerals(o.lhs),
                                  normalize_numerals(o.rhs));
          },
          [&](const Implies& i) {
            return Sentence::implies(normalize_numerals(i.lhs),
                                     normalize_numerals(i.rhs));
          },
          [&](const ForAll& f) {
            return Sentence::forall(f.var, normalize_numerals(f.body));
          },
          [&](const Exists& e) {
            return Sentence::exists(e.var, normalize_numerals(e.body));
          },
      },
      s.node());
}

// ---------------------------------------------------------------------------
// Rendering
// ---------------------------------------------------------------------------

namespace {

// Term precedence: atoms > * > +. Parenthesize a child when its operator
// binds no tighter than the parent's, and always on the right of a chain of
// the same operator so left associativity survives the round trip.

enum class TermPrec { Atom, MulLevel, AddLevel };

TermPrec term_prec(const Term& t) {
  if (std::holds_alternative<Add>(t.node())) return TermPrec::AddLevel;
  if (std::holds_alternative<Mul>(t.node())) return TermPrec::MulLevel;
  return TermPrec::Atom;
}

void render_term(const Term& t, const RenderOptions& opts, std::string& out);

void render_child(const Term& child, TermPrec parent, bool right_side,
                  const RenderOptions& opts, std::string& out) {
  TermPrec child_prec = term_prec(child);
  bool parens = false;
  if (parent == TermPrec::MulLevel)
    parens = child_prec == TermPrec::AddLevel ||
             (right_side && child_prec == TermPrec::MulLevel);
  else if (parent == TermPrec::AddLevel)
    parens = right_side && child_prec == TermPrec::AddLevel;
  if (parens) out += '(';
  render_term(child, opts, out);
  if (parens) out += ')';
}

void render_term(const Term& t, const RenderOptions& opts, std::string& out) {
  std::visit(
      overloaded{
          [&](const Zero&) { out += '0'; },
          [&](const Numeral& n) {
            if (n.value == 0) {
              out += '0';
            } else if (n.value < opts.numeral_expansion_cap) {
              unsigned long reps = n.value.get_ui();
              for (unsigned long i = 0; i < reps; ++i) out += "S(";
              out += '0';
              for (unsigned long i = 0; i < reps; ++i) out += ')';
            } else {
              out += "S^";
              out += to_decimal(n.value);
              out += "(0)";
            }
          },
          [&](const Var& v) { out += v.name; },
          [&](const Const& c) {
            out += 'c';
            out += std::to_string(c.index);
          },
          [&](const Succ& s) {
            out += "S(";
            render_term(s.child, opts, out);
            out += ')';
          },
          [&](const Add& a) {
            render_child(a.lhs, TermPrec::AddLevel, false, opts, out);
            out += " + ";
            render_child(a.rhs, TermPrec::AddLevel, true, opts, out);
          },
          [&](const Mul& m) {
            render_child(m.lhs, TermPrec::MulLevel, false, opts, out);
            out += " * ";
            render_child(m.rhs, TermPrec::MulLevel, true, opts, out);
          },
      },
      t.node());
}

bool is_connective(const Sentence& s) {
  return std::holds_alternative<And>(s.node()) ||
         std::holds_alternative<Or>(s.node()) ||
         std::holds_alternative<Implies>(s.node());
}

bool is_quantifier(const Sentence& s) {
  return std::holds_alternative<ForAll>(s.node()) ||
         std::holds_alternative<Exists>(s.node());
}

void render_sentence(const Sentence& s, const RenderOptions& opts,
                     std::string& out);

// Operands of binary connectives are parenthesized whenever they are
// themselves connectives or quantifiers; quantifier scope extends maximally
// to the right, so this keeps the round trip structure-exact.
void render_operand(const Sentence& s, const RenderOptions& opts,
                    std::string& out) {
  bool parens = is_connective(s) || is_quantifier(s);
  if (parens) out += '(';
  render_sentence(s, opts, out);
  if (parens) out += ')';
}

void render_sentence(const Sentence& s, const RenderOptions& opts,
                     std::string& out) {
  std::visit(
      overloaded{
          [&](const Eq& e) {
            render_term(e.lhs, opts, out);
            out += " = ";
            render_term(e.rhs, opts, out);
          },
          [&](const Not& n) {
            out += "~(";
            render_sentence(n.sub, opts, out);
            out += ')';
          },
          [&](const And& a) {
            render_operand(a.lhs, opts, out);
            out += " /\\ ";
            render_operand(a.rhs, opts, out);
          },
          [&](const Or& o) {
            render_operand(o.lhs, opts, out);
            out += " \\/ ";
            render_operand(o.rhs, opts, out);
          },
          [&](const Implies& i) {
            render_operand(i.lhs, opts, out);
            out += " -> ";
            render_operand(i.rhs, opts, out);
          },
          [&](const ForAll& f) {
            out += "forall ";
            out += f.var;
            out += ' ';
            if (is_connective(f.body)) {
              out += '(';
              render_sentence(f.body, opts, out);
              out += ')';
            } else {
              render_sentence(f.body, opts, out);
            }
          },
          [&](const Exists& e) {
            out += "exists ";
            out += e.var;
            out += ' ';
            if (is_connective(e.body)) {
              out += '(';
              render_sentence(e.body, opts, out);
              out += ')';
            } else {
              render_sentence(e.body, opts, out);
            }
          },
      },
      s.node());
}

}  // namespace

std::string render(const Term& t, const RenderOptions& opts) {
  std::string out;
  render_term(t, opts, out);
  return out;
}

std::string render(const Sentence& s, const RenderOptions& opts) {
  std::string out;
  render_sentence(s, opts, out);
  return out;
}

// ---------------------------------------------------------------------------
// Assignment / Verdict
// ---------------------------------------------------------------------------

const Nat& Assignment::at(int index) const {
  if (!has(index))
    throw Error("assignment: constant c" + std::to_string(index) +
                " is not interpreted");
  return values_[static_cast<std::size_t>(index) - 1];
}

std::string to_string(const Verdict& v) {
  switch (v.kind) {
    case Verdict::Kind::True:
      return "True";
    case Verdict::Kind::False:
      return "False";
    case Verdict::Kind::Unknown:
      return "UnknownUpTo(" + to_decimal(v.bound) + ")";
  }
  return "False";
}

Verdict verdict_from_string(const std::string& s) {
  if (s == "True") return Verdict::truth(true);
  if (s == "False") return Verdict::truth(false);
  const std::string prefix = "UnknownUpTo(";
  if (s.size() > prefix.size() + 1 &&
      s.compare(0, prefix.size(), prefix) == 0 && s.back() == ')')
    return Verdict::unknown(nat_from_decimal(
        s.substr(prefix.size(), s.size() - prefix.size() - 1)));
  throw Error("not a verdict: " + s);
}

}  // namespace primwit
