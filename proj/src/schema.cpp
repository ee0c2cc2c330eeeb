#include "primwit/schema.hpp"

#include "primwit/number_theory.hpp"

namespace primwit {

std::string to_string(SchemaKind kind) {
  switch (kind) {
    case SchemaKind::Alpha: return "alpha";
    case SchemaKind::Beta: return "beta";
    case SchemaKind::Gamma: return "gamma";
    case SchemaKind::Omega: return "omega";
    case SchemaKind::Sigma: return "sigma";
  }
  return "alpha";
}

std::optional<SchemaKind> schema_kind_from_string(const std::string& s) {
  if (s == "alpha") return SchemaKind::Alpha;
  if (s == "beta") return SchemaKind::Beta;
  if (s == "gamma") return SchemaKind::Gamma;
  if (s == "omega") return SchemaKind::Omega;
  if (s == "sigma") return SchemaKind::Sigma;
  return std::nullopt;
}

std::string to_string(const SchemaTag& tag) {
  std::string out = to_string(tag.kind);
  if (tag.kind != SchemaKind::Sigma) out += ":" + std::to_string(tag.i);
  if (tag.kind == SchemaKind::Gamma || tag.kind == SchemaKind::Omega ||
      tag.kind == SchemaKind::Sigma)
    out += ":" + to_decimal(tag.p);
  return out;
}

SchemaTag schema_tag_from_string(const std::string& s) {
  std::vector<std::string> parts;
  std::size_t start = 0;
  for (;;) {
    auto colon = s.find(':', start);
    if (colon == std::string::npos) {
      parts.push_back(s.substr(start));
      break;
    }
    parts.push_back(s.substr(start, colon - start));
    start = colon + 1;
  }
  auto kind = schema_kind_from_string(parts[0]);
  if (!kind) throw Error("unknown schema kind: " + parts[0]);
  auto as_int = [&](const std::string& t) {
    Nat v = nat_from_decimal(t);
    if (!v.fits_sint_p()) throw Error("schema index out of range: " + t);
    return static_cast<int>(v.get_si());
  };
  switch (*kind) {
    case SchemaKind::Alpha:
    case SchemaKind::Beta:
      if (parts.size() != 2)
        throw Error("expected " + parts[0] + ":<i>, got " + s);
      return make_tag(*kind, as_int(parts[1]), 0);
    case SchemaKind::Gamma:
    case SchemaKind::Omega:
      if (parts.size() != 3)
        throw Error("expected " + parts[0] + ":<i>:<p>, got " + s);
      return make_tag(*kind, as_int(parts[1]), nat_from_decimal(parts[2]));
    case SchemaKind::Sigma:
      if (parts.size() != 2)
        throw Error("expected sigma:<p>, got " + s);
      return make_tag(*kind, 0, nat_from_decimal(parts[1]));
  }
  throw Error("unknown schema kind: " + parts[0]);
}

SchemaTag make_tag(SchemaKind kind, int i, const Nat& p) {
  SchemaTag tag{kind, i, p};
  bool needs_i = kind != SchemaKind::Sigma;
  bool needs_p = kind == SchemaKind::Gamma || kind == SchemaKind::Omega ||
                 kind == SchemaKind::Sigma;
  if (needs_i && i < 1)
    throw Error(to_string(kind) + ": index i must be >= 1");
  if (!needs_i && i != 0)
    throw Error("sigma carries no constant index");
  if (needs_p) {
    if (!is_prime(p).passed())
      throw Error(to_string(kind) + ": " + to_decimal(p) + " is not prime");
  } else if (p != 0) {
    throw Error(to_string(kind) + " carries no prime parameter");
  }
  return tag;
}

// ---------------------------------------------------------------------------
// Generators
// ---------------------------------------------------------------------------

TaggedSentence alpha(int i) {
  SchemaTag tag = make_tag(SchemaKind::Alpha, i, 0);
  if (i == 1)
    return {desugar_ge(Term::constant(1), Term::numeral(2)), tag};
  return {desugar_gt(Term::constant(i), Term::constant(i - 1)), tag};
}

TaggedSentence beta(int i) {
  SchemaTag tag = make_tag(SchemaKind::Beta, i, 0);
  Term ci = Term::constant(i);
  Term x = Term::var("x");
  Term y = Term::var("y");
  Sentence body = Sentence::implies(
      Sentence::eq(Term::mul(x, y), ci),
      Sentence::disj(Sentence::eq(x, ci), Sentence::eq(y, ci)));
  return {Sentence::forall("x", Sentence::forall("y", std::move(body))), tag};
}

TaggedSentence gamma(int i, const Nat& p) {
  SchemaTag tag = make_tag(SchemaKind::Gamma, i, p);
  Sentence body = Sentence::negate(
      Sentence::eq(Term::add(Term::constant(i), Term::numeral(2)),
                   Term::mul(Term::var("z"), Term::numeral(p))));
  return {Sentence::forall("z", std::move(body)), tag};
}

TaggedSentence omega(int i, const Nat& p) {
  SchemaTag tag = make_tag(SchemaKind::Omega, i, p);
  Sentence body = Sentence::eq(
      Term::constant(i),
      Term::add(Term::mul(Term::var("x"), Term::numeral(p)),
                Term::numeral(p - 1)));
  return {Sentence::exists("x", std::move(body)), tag};
}

TaggedSentence sigma(const Nat& p) {
  SchemaTag tag = make_tag(SchemaKind::Sigma, 0, p);
  Term z = Term::var("z");
  Sentence premise = Sentence::exists(
      "x", Sentence::eq(z, Term::add(Term::mul(Term::var("x"), Term::numeral(p)),
                                     Term::numeral(p - 1))));
  Sentence conclusion = Sentence::exists(
      "y", Sentence::eq(Term::add(z, Term::numeral(2)),
                        Term::add(Term::mul(Term::var("y"), Term::numeral(p)),
                                  Term::numeral(1))));
  return {Sentence::forall("z", Sentence::implies(std::move(premise),
                                                  std::move(conclusion))),
          tag};
}

std::vector<TaggedSentence> theta(const FragmentSpec& spec) {
  if (spec.n < 1 || spec.k < 1)
    throw Error("theta: fragment parameters must satisfy n, k >= 1");
  auto primes = first_primes(static_cast<std::size_t>(spec.k));
  std::vector<TaggedSentence> out;
  out.reserve(static_cast<std::size_t>(spec.n) * (spec.k + 2));
  for (int i = 1; i <= spec.n; ++i) {
    out.push_back(alpha(i));
    out.push_back(beta(i));
    for (auto p : primes) out.push_back(gamma(i, Nat(p)));
  }
  return out;
}

std::vector<TaggedSentence> omega_block(const FragmentSpec& spec) {
  if (spec.n < 1 || spec.k < 1)
    throw Error("omega_block: fragment parameters must satisfy n, k >= 1");
  auto primes = first_primes(static_cast<std::size_t>(spec.k));
  std::vector<TaggedSentence> out;
  out.reserve(static_cast<std::size_t>(spec.n) * spec.k);
  for (int i = 1; i <= spec.n; ++i)
    for (auto p : primes) out.push_back(omega(i, Nat(p)));
  return out;
}

// ---------------------------------------------------------------------------
// Exact evaluation
// ---------------------------------------------------------------------------

bool sigma_holds_up_to(const Nat& p, const Nat& bound) {
  for (Nat z = 0; z <= bound; ++z)
    if (z % p == p - 1 && (z + 2) % p != 1) return false;
  return true;
}

Verdict eval_schema(const TaggedSentence& s, const Assignment& a,
                    const SchemaEvalOptions& opts) {
  if (!s.tag) throw Error("eval_schema: sentence carries no schema tag");
  const SchemaTag& tag = *s.tag;
  switch (tag.kind) {
    case SchemaKind::Alpha:
      if (tag.i == 1) return Verdict::truth(a.at(1) >= 2);
      return Verdict::truth(a.at(tag.i) > a.at(tag.i - 1));
    case SchemaKind::Beta: {
      const Nat& m = a.at(tag.i);
      // The product sentence is satisfied by 0 and 1 as written; it carries
      // no q >= 2 clause.
      if (m <= 1) return Verdict::truth(true);
      return Verdict::truth(is_prime(m).passed());
    }
    case SchemaKind::Gamma:
      return Verdict::truth((a.at(tag.i) + 2) % tag.p != 0);
    case SchemaKind::Omega:
      return Verdict::truth(a.at(tag.i) % tag.p == tag.p - 1);
    case SchemaKind::Sigma:
      if (!sigma_holds_up_to(tag.p, opts.sigma_scan_bound))
        return Verdict::truth(false);
      return Verdict::unknown(opts.sigma_scan_bound);
  }
  throw Error("eval_schema: unknown kind");
}

// ---------------------------------------------------------------------------
// Structural recognition
// ---------------------------------------------------------------------------

namespace {

std::optional<SchemaTag> probe_alpha(const Sentence& s) {
  const auto* ex = std::get_if<Exists>(&s.node());
  if (!ex) return std::nullopt;
  const auto* eq = std::get_if<Eq>(&ex->body.node());
  if (!eq) return std::nullopt;
  const auto* add = std::get_if<Add>(&eq->lhs.node());
  if (!add) return std::nullopt;
  const auto* rhs_const = std::get_if<Const>(&eq->rhs.node());
  if (!rhs_const) return std::nullopt;
  int i = 0;
  if (const auto* num = std::get_if<Numeral>(&add->lhs.node())) {
    if (num->value != 2 || rhs_const->index != 1) return std::nullopt;
    i = 1;
  } else if (const auto* succ = std::get_if<Succ>(&add->lhs.node())) {
    const auto* prev = std::get_if<Const>(&succ->child.node());
    if (!prev || prev->index + 1 != rhs_const->index) return std::nullopt;
    i = rhs_const->index;
  } else {
    return std::nullopt;
  }
  if (s == alpha(i).sentence) return make_tag(SchemaKind::Alpha, i, 0);
  return std::nullopt;
}

std::optional<SchemaTag> probe_beta(const Sentence& s) {
  const auto* fa1 = std::get_if<ForAll>(&s.node());
  if (!fa1) return std::nullopt;
  const auto* fa2 = std::get_if<ForAll>(&fa1->body.node());
  if (!fa2) return std::nullopt;
  const auto* imp = std::get_if<Implies>(&fa2->body.node());
  if (!imp) return std::nullopt;
  const auto* eq = std::get_if<Eq>(&imp->lhs.node());
  if (!eq) return std::nullopt;
  const auto* ci = std::get_if<Const>(&eq->rhs.node());
  if (!ci) return std::nullopt;
  if (s == beta(ci->index).sentence)
    return make_tag(SchemaKind::Beta, ci->index, 0);
  return std::nullopt;
}

std::optional<SchemaTag> probe_gamma(const Sentence& s) {
  const auto* fa = std::get_if<ForAll>(&s.node());
  if (!fa) return std::nullopt;
  const auto* neg = std::get_if<Not>(&fa->body.node());
  if (!neg) return std::nullopt;
  const auto* eq = std::get_if<Eq>(&neg->sub.node());
  if (!eq) return std::nullopt;
  const auto* lhs = std::get_if<Add>(&eq->lhs.node());
  const auto* rhs = std::get_if<Mul>(&eq->rhs.node());
  if (!lhs || !rhs) return std::nullopt;
  const auto* ci = std::get_if<Const>(&lhs->lhs.node());
  const auto* p = std::get_if<Numeral>(&rhs->rhs.node());
  if (!ci || !p) return std::nullopt;
  if (!is_prime(p->value).passed()) return std::nullopt;
  if (s == gamma(ci->index, p->value).sentence)
    return make_tag(SchemaKind::Gamma, ci->index, p->value);
  return std::nullopt;
}

std::optional<SchemaTag> probe_omega(const Sentence& s) {
  const auto* ex = std::get_if<Exists>(&s.node());
  if (!ex) return std::nullopt;
  const auto* eq = std::get_if<Eq>(&ex->body.node());
  if (!eq) return std::nullopt;
  const auto* ci = std::get_if<Const>(&eq->lhs.node());
  if (!ci) return std::nullopt;
  const auto* add = std::get_if<Add>(&eq->rhs.node());
  if (!add) return std::nullopt;
  const auto* mul = std::get_if<Mul>(&add->lhs.node());
  if (!mul) return std::nullopt;
  const auto* p = std::get_if<Numeral>(&mul->rhs.node());
  if (!p || !is_prime(p->value).passed()) return std::nullopt;
  if (s == omega(ci->index, p->value).sentence)
    return make_tag(SchemaKind::Omega, ci->index, p->value);
  return std::nullopt;
}

std::optional<SchemaTag> probe_sigma(const Sentence& s) {
  const auto* fa = std::get_if<ForAll>(&s.node());
  if (!fa) return std::nullopt;
  const auto* imp = std::get_if<Implies>(&fa->body.node());
  if (!imp) return std::nullopt;
  const auto* ex = std::get_if<Exists>(&imp->lhs.node());
  if (!ex) return std::nullopt;
  const auto* eq = std::get_if<Eq>(&ex->body.node());
  if (!eq) return std::nullopt;
  const auto* add = std::get_if<Add>(&eq->rhs.node());
  if (!add) return std::nullopt;
  const auto* mul = std::get_if<Mul>(&add->lhs.node());
  if (!mul) return std::nullopt;
  const auto* p = std::get_if<Numeral>(&mul->rhs.node());
  if (!p || !is_prime(p->value).passed()) return std::nullopt;
  if (s == sigma(p->value).sentence)
    return make_tag(SchemaKind::Sigma, 0, p->value);
  return std::nullopt;
}

}  // namespace

std::optional<SchemaTag> match_schema(const Sentence& s) {
  if (auto t = probe_alpha(s)) return t;
  if (auto t = probe_beta(s)) return t;
  if (auto t = probe_gamma(s)) return t;
  if (auto t = probe_omega(s)) return t;
  if (auto t = probe_sigma(s)) return t;
  return std::nullopt;
}

}  // namespace primwit
