#include "primwit/eval.hpp"

#include <algorithm>
#include <functional>
#include <optional>
#include <vector>

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
// Term evaluation
// ---------------------------------------------------------------------------

Nat eval_term(const Term& t, const Assignment& a, const VarEnv& env) {
  return std::visit(
      overloaded{
          [&](const Zero&) -> Nat { return 0; },
          [&](const Numeral& n) -> Nat { return n.value; },
          [&](const Var& v) -> Nat {
            auto it = env.find(v.name);
            if (it == env.end())
              throw Error("eval: unbound variable " + v.name);
            return it->second;
          },
          [&](const Const& c) -> Nat { return a.at(c.index); },
          [&](const Succ& s) -> Nat { return eval_term(s.child, a, env) + 1; },
          [&](const Add& x) -> Nat {
            return eval_term(x.lhs, a, env) + eval_term(x.rhs, a, env);
          },
          [&](const Mul& x) -> Nat {
            return eval_term(x.lhs, a, env) * eval_term(x.rhs, a, env);
          },
      },
      t.node());
}

// ---------------------------------------------------------------------------
// Bounded sentence evaluation
// ---------------------------------------------------------------------------

namespace {

bool contains_var_of(const Term& t, const std::vector<std::string>& vars) {
  auto fv = free_vars(t);
  return std::any_of(vars.begin(), vars.end(),
                     [&](const std::string& v) { return fv.count(v) != 0; });
}

// A guard equation side in the shape  (v_1 * v_2 * ... * v_m) * coeff + offset
// with distinct chain variables v_j and closed coeff/offset. Whenever the
// side equals a value c, each v_j is bounded by c, so the solution set is
// finite and enumerable.
struct GuardForm {
  std::vector<std::string> vars;
  Nat coeff = 1;
  Nat offset = 0;
};

class Evaluator {
 public:
  Evaluator(const Assignment& a, const Nat& bound) : a_(a), bound_(bound) {}

  Verdict eval(const Sentence& s) {
    return std::visit(
        overloaded{
            [&](const Eq& e) {
              return Verdict::truth(value(e.lhs) == value(e.rhs));
            },
            [&](const Not& n) {
              Verdict v = eval(n.sub);
              if (v.decided()) return Verdict::truth(!v.is_true());
              return unknown();
            },
            [&](const And& x) {
              Verdict l = eval(x.lhs);
              if (l.is_false()) return Verdict::truth(false);
              Verdict r = eval(x.rhs);
              if (r.is_false()) return Verdict::truth(false);
              if (l.is_true() && r.is_true()) return Verdict::truth(true);
              return unknown();
            },
            [&](const Or& x) {
              Verdict l = eval(x.lhs);
              if (l.is_true()) return Verdict::truth(true);
              Verdict r = eval(x.rhs);
              if (r.is_true()) return Verdict::truth(true);
              if (l.is_false() && r.is_false()) return Verdict::truth(false);
              return unknown();
            },
            [&](const Implies& x) {
              Verdict l = eval(x.lhs);
              if (l.is_false()) return Verdict::truth(true);
              Verdict r = eval(x.rhs);
              if (r.is_true()) return Verdict::truth(true);
              if (l.is_true() && r.is_false()) return Verdict::truth(false);
              return unknown();
            },
            [&](const ForAll&) { return eval_quantifier(s, /*universal=*/true); },
            [&](const Exists&) { return eval_quantifier(s, /*universal=*/false); },
        },
        s.node());
  }

 private:
  Verdict unknown() const { return Verdict::unknown(bound_); }

  Nat value(const Term& t) const { return eval_term(t, a_, env_); }

  bool var_is_free(const std::string& v, const Sentence& s) const {
    return free_vars(s).count(v) != 0;
  }

  Verdict eval_quantifier(const Sentence& s, bool universal) {
    // Peel the maximal same-kind chain, stopping at vacuous or shadowing
    // binders (those are handled by the recursion).
    std::vector<std::string> chain;
    Sentence body = s;
    for (;;) {
      const SentenceVariant& n = body.node();
      const ForAll* fa = std::get_if<ForAll>(&n);
      const Exists* ex = std::get_if<Exists>(&n);
      if (universal && fa == nullptr) break;
      if (!universal && ex == nullptr) break;
      const std::string& var = universal ? fa->var : ex->var;
      const Sentence& inner = universal ? fa->body : ex->body;
      if (std::count(chain.begin(), chain.end(), var)) break;
      if (!var_is_free(var, inner)) break;
      chain.push_back(var);
      body = inner;
    }

    if (chain.empty()) {
      // The outermost binder is vacuous: the body's verdict is the verdict.
      const SentenceVariant& n = s.node();
      if (const ForAll* fa = std::get_if<ForAll>(&n)) return eval(fa->body);
      return eval(std::get<Exists>(n).body);
    }

    if (auto decided = try_guarded_chain(chain, body, universal))
      return *decided;

    // Fallback: scan the outermost variable over {0..bound}; recursion
    // covers the inner quantifiers.
    const std::string& var = chain.front();
    const SentenceVariant& n0 = s.node();
    const Sentence& inner = universal ? std::get<ForAll>(n0).body
                                      : std::get<Exists>(n0).body;
    auto saved = stash(var);
    for (Nat v = 0; v <= bound_; ++v) {
      env_[var] = v;
      Verdict r = eval(inner);
      if (universal && r.is_false()) {
        restore(var, saved);
        return Verdict::truth(false);
      }
      if (!universal && r.is_true()) {
        restore(var, saved);
        return Verdict::truth(true);
      }
    }
    restore(var, saved);
    // A truncated universal is never certified True, nor a truncated
    // existential False.
    return unknown();
  }

  // Guard shapes:
  //   forall-chain over   Implies(Eq, psi)   or   Not(Eq)
  //   exists-chain over   Eq
  // with the equation having one side closed (no chain variables) and the
  // other side in GuardForm covering every chain variable.
  std::optional<Verdict> try_guarded_chain(const std::vector<std::string>& chain,
                                           const Sentence& body,
                                           bool universal) {
    const Eq* guard = nullptr;
    const Sentence* then_branch = nullptr;  // null means Not(Eq)
    if (universal) {
      if (const auto* imp = std::get_if<Implies>(&body.node())) {
        guard = std::get_if<Eq>(&imp->lhs.node());
        then_branch = &imp->rhs;
      } else if (const auto* neg = std::get_if<Not>(&body.node())) {
        guard = std::get_if<Eq>(&neg->sub.node());
      }
    } else {
      guard = std::get_if<Eq>(&body.node());
    }
    if (guard == nullptr) return std::nullopt;

    bool lhs_open = contains_var_of(guard->lhs, chain);
    bool rhs_open = contains_var_of(guard->rhs, chain);
    if (lhs_open == rhs_open) return std::nullopt;
    const Term& open_side = lhs_open ? guard->lhs : guard->rhs;
    const Term& closed_side = lhs_open ? guard->rhs : guard->lhs;

    auto form = match_guard_form(open_side, chain);
    if (!form) return std::nullopt;
    // Every chain variable must occur in the open side, else instances with
    // the missing variable large are out of the enumeration's reach.
    if (form->vars.size() != chain.size()) return std::nullopt;

    const Nat target = value(closed_side);

    // Solve (v_1 ... v_m) * coeff + offset == target over naturals.
    std::vector<std::vector<Nat>> solutions;
    if (target >= form->offset) {
      Nat rest = target - form->offset;
      if (form->coeff == 0) return std::nullopt;  // degenerate, scan instead
      if (rest % form->coeff == 0) {
        Nat product = rest / form->coeff;
        if (!enumerate_products(product, form->vars.size(), solutions))
          return std::nullopt;  // enumeration too large, scan instead
      }
    }

    if (!universal) {
      // exists-chain over a bare equation: solutions are witnesses.
      return Verdict::truth(!solutions.empty());
    }
    if (then_branch == nullptr) {
      // forall-chain over Not(Eq): any solution refutes it.
      return Verdict::truth(solutions.empty());
    }
    // forall-chain over Implies(Eq, psi): instances off the solution set are
    // vacuously true; psi decides the rest.
    bool saw_unknown = false;
    for (const auto& sol : solutions) {
      std::vector<std::optional<Nat>> saved;
      saved.reserve(chain.size());
      for (std::size_t j = 0; j < form->vars.size(); ++j) {
        saved.push_back(stash(form->vars[j]));
        env_[form->vars[j]] = sol[j];
      }
      Verdict r = eval(*then_branch);
      for (std::size_t j = form->vars.size(); j-- > 0;)
        restore(form->vars[j], saved[j]);
      if (r.is_false()) return Verdict::truth(false);
      if (!r.decided()) saw_unknown = true;
    }
    if (saw_unknown) return unknown();
    return Verdict::truth(true);
  }

  // Decompose t as (product of distinct chain vars) * coeff + offset. Fails
  // (nullopt) when a chain variable occurs under anything but a bare
  // top-level product factor, or occurs twice.
  std::optional<GuardForm> match_guard_form(
      const Term& t, const std::vector<std::string>& chain) {
    GuardForm form;
    std::vector<const Term*> open_addends;
    Nat closed_sum = 0;
    if (!flatten_add(t, chain, open_addends, closed_sum)) return std::nullopt;
    if (open_addends.size() != 1) return std::nullopt;
    form.offset = closed_sum;
    if (!flatten_mul(*open_addends.front(), chain, form)) return std::nullopt;
    return form;
  }

  bool flatten_add(const Term& t, const std::vector<std::string>& chain,
                   std::vector<const Term*>& open, Nat& closed_sum) {
    if (!contains_var_of(t, chain)) {
      closed_sum += value(t);
      return true;
    }
    if (const auto* add = std::get_if<Add>(&t.node()))
      return flatten_add(add->lhs, chain, open, closed_sum) &&
             flatten_add(add->rhs, chain, open, closed_sum);
    if (const auto* succ = std::get_if<Succ>(&t.node())) {
      closed_sum += 1;
      return flatten_add(succ->child, chain, open, closed_sum);
    }
    open.push_back(&t);
    return true;
  }

  bool flatten_mul(const Term& t, const std::vector<std::string>& chain,
                   GuardForm& form) {
    if (!contains_var_of(t, chain)) {
      form.coeff *= value(t);
      return true;
    }
    if (const auto* mul = std::get_if<Mul>(&t.node()))
      return flatten_mul(mul->lhs, chain, form) &&
             flatten_mul(mul->rhs, chain, form);
    if (const auto* var = std::get_if<Var>(&t.node())) {
      if (std::count(form.vars.begin(), form.vars.end(), var->name)) return false;
      if (!std::count(chain.begin(), chain.end(), var->name)) return false;
      form.vars.push_back(var->name);
      return true;
    }
    return false;  // chain variable under S(...) or inside a sum factor
  }

  // All ordered m-tuples of naturals with the given product, ascending in
  // lexicographic order. Returns false when enumeration would be too costly.
  static bool enumerate_products(const Nat& product, std::size_t m,
                                 std::vector<std::vector<Nat>>& out) {
    if (m == 1) {
      out.push_back({product});
      return true;
    }
    if (product == 0) return false;  // infinitely many tuples contain a zero
    if (m == 2 && product > Nat("1000000000000")) return false;
    if (m > 2 && product > Nat(1000000)) return false;
    const unsigned long p = product.get_ui();
    std::vector<unsigned long> divisors;
    for (unsigned long d = 1; d * d <= p; ++d) {
      if (p % d == 0) {
        divisors.push_back(d);
        if (d != p / d) divisors.push_back(p / d);
      }
    }
    std::sort(divisors.begin(), divisors.end());
    std::vector<std::vector<Nat>> tails;
    for (unsigned long d : divisors) {
      tails.clear();
      if (!enumerate_products(Nat(p / d), m - 1, tails)) return false;
      for (auto& tail : tails) {
        std::vector<Nat> tuple;
        tuple.reserve(m);
        tuple.push_back(d);
        for (auto& x : tail) tuple.push_back(std::move(x));
        out.push_back(std::move(tuple));
      }
    }
    return true;
  }

  std::optional<Nat> stash(const std::string& var) {
    auto it = env_.find(var);
    if (it == env_.end()) return std::nullopt;
    return it->second;
  }

  void restore(const std::string& var, const std::optional<Nat>& saved) {
    if (saved)
      env_[var] = *saved;
    else
      env_.erase(var);
  }

  const Assignment& a_;
  const Nat& bound_;
  VarEnv env_;
};

}  // namespace

Verdict eval_bounded(const Sentence& s, const Assignment& a, const Nat& bound) {
  auto fv = free_vars(s);
  if (!fv.empty())
    throw Error("eval: sentence is not closed (free variable " + *fv.begin() +
                ")");
  for (int idx : constant_indices(s))
    if (!a.has(idx))
      throw Error("eval: assignment does not interpret c" +
                  std::to_string(idx));
  if (bound < 0) throw Error("eval: bound must be a natural number");
  Evaluator ev(a, bound);
  return ev.eval(s);
}

}  // namespace primwit
