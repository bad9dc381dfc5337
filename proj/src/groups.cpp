#include "cliff/groups.hpp"

#include <algorithm>
#include <array>
#include <limits>
#include <sstream>

#include "cliff/matexp.hpp"
#include "cliff/prng.hpp"

namespace cliff {

namespace {

int mod8(int v) { return ((v % 8) + 8) % 8; }

long long binom(int n, int k) {
  if (k < 0 || k > n) return 0;
  long long r = 1;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

long long pow2ll(long long e) {
  if (e < 0) throw std::logic_error("pow2: negative exponent");
  return 1ll << e;
}

}  // namespace

std::string group_token(GroupId g) {
  switch (g) {
    case GroupId::SpO2i1: return "spo2i1";
    case GroupId::SpO2i3: return "spo2i3";
    case GroupId::SpO23: return "spo23";
    case GroupId::SpO12: return "spo12";
    case GroupId::SpO2: return "spo2";
  }
  return "?";
}

std::optional<GroupId> group_from_token(std::string_view token) {
  for (GroupId g : kAllGroups)
    if (token == group_token(g)) return g;
  return std::nullopt;
}

std::string group_display(GroupId g) {
  switch (g) {
    case GroupId::SpO2i1: return "SpO_2i1";
    case GroupId::SpO2i3: return "SpO_2i3";
    case GroupId::SpO23: return "SpO_23";
    case GroupId::SpO12: return "SpO_12";
    case GroupId::SpO2: return "SpO_2";
  }
  return "?";
}

std::string ClassicalGroupDescriptor::family_token() const {
  switch (family) {
    case GroupFamily::O: return "O";
    case GroupFamily::SplitO: return "Omm";
    case GroupFamily::Sp: return "Sp";
    case GroupFamily::GL: return "GL";
  }
  return "?";
}

namespace {

std::string factor_name(const ClassicalGroupDescriptor& d, bool lower) {
  std::ostringstream os;
  switch (d.family) {
    case GroupFamily::O: os << (lower ? "o(" : "O(") << d.m << ")"; break;
    case GroupFamily::SplitO: os << (lower ? "o(" : "O(") << d.m << "," << d.m << ")"; break;
    case GroupFamily::Sp: os << (lower ? "sp(" : "Sp(") << d.m << ",R)"; break;
    case GroupFamily::GL: os << (lower ? "gl(" : "GL(") << d.m << ",R)"; break;
  }
  return os.str();
}

}  // namespace

std::string ClassicalGroupDescriptor::group_name() const {
  std::string one = factor_name(*this, false);
  return multiplicity == 2 ? one + " ⊕ " + one : one;
}

std::string ClassicalGroupDescriptor::algebra_name() const {
  std::string one = factor_name(*this, true);
  return multiplicity == 2 ? one + " ⊕ " + one : one;
}

bool group_in_scope(GroupId g, Signature sig) {
  if (sig.n() < 1) return false;
  int r = mod8(sig.p - sig.q);
  switch (g) {
    case GroupId::SpO23:
    case GroupId::SpO12: return r == 0 || r == 1 || r == 2;
    case GroupId::SpO2i1:
    case GroupId::SpO2i3: return r == 0 || r == 6 || r == 7;
    case GroupId::SpO2: return r == 0 || r == 1 || r == 7;
  }
  return false;
}

std::string group_scope_rule(GroupId g) {
  switch (g) {
    case GroupId::SpO23:
    case GroupId::SpO12: return "requires p - q = 0, 1 or 2 (mod 8) and n >= 1";
    case GroupId::SpO2i1:
    case GroupId::SpO2i3: return "requires p - q = 0, 6 or 7 (mod 8) and n >= 1";
    case GroupId::SpO2: return "requires p - q = 0, 1 or 7 (mod 8) and n >= 1";
  }
  return "";
}

namespace {

// Grade classes (mod 4) of the real part of each Lie algebra, plus the
// i-multiplied class for the two complex-carrier groups.
struct AlgebraClasses {
  std::array<bool, 4> real{};
  std::array<bool, 4> imag{};
};

AlgebraClasses algebra_classes(GroupId g) {
  AlgebraClasses c;
  switch (g) {
    case GroupId::SpO23: c.real[2] = c.real[3] = true; break;
    case GroupId::SpO12: c.real[1] = c.real[2] = true; break;
    case GroupId::SpO2: c.real[2] = true; break;
    case GroupId::SpO2i1: c.real[2] = c.imag[1] = true; break;
    case GroupId::SpO2i3: c.real[2] = c.imag[3] = true; break;
  }
  return c;
}

// The defining involution of each group, applied to exact or float values.
template <class C>
BasicMultivector<C> defining_conjugation(GroupId g, const BasicMultivector<C>& u,
                                         ConjugationReading reading) {
  switch (g) {
    case GroupId::SpO23: return u.reversed();
    case GroupId::SpO2: return u.reversed();
    case GroupId::SpO12: return u.reversed().grade_involution();
    case GroupId::SpO2i1:
      return reading == ConjugationReading::PseudoHermitian ? u.pseudo_hermitian()
                                                            : u.hermitian();
    case GroupId::SpO2i3:
      return (reading == ConjugationReading::PseudoHermitian ? u.pseudo_hermitian()
                                                             : u.hermitian())
          .grade_involution();
  }
  throw std::logic_error("defining_conjugation: bad group");
}

template <class C>
void check_carrier(GroupId g, const BasicMultivector<C>& u) {
  using CT = detail::coeff_traits<C>;
  switch (g) {
    case GroupId::SpO23:
    case GroupId::SpO12:
      if (!u.is_real())
        throw std::invalid_argument(group_display(g) + " carrier: multivector must be real");
      return;
    case GroupId::SpO2:
      if (!u.is_real() || !u.is_even())
        throw std::invalid_argument("SpO_2 carrier: multivector must be real and even");
      return;
    case GroupId::SpO2i1:
    case GroupId::SpO2i3:
      for (const auto& [mask, c] : u.terms()) {
        bool even = blade_grade(mask) % 2 == 0;
        bool ok = even ? CT::is_real(c) : CT::is_zero(c + CT::conj(c));
        if (!ok)
          throw std::invalid_argument(group_display(g) +
                                      " carrier: needs real even part and imaginary odd part");
      }
      return;
  }
}

}  // namespace

bool is_member(GroupId g, const Multivector& u, ConjugationReading reading) {
  check_carrier(g, u);
  Multivector lhs = defining_conjugation(g, u, reading) * u;
  return lhs == Multivector::unit(u.sig(), u.field());
}

double membership_residual(GroupId g, const MultivectorF& u, ConjugationReading reading) {
  check_carrier(g, u);
  MultivectorF lhs = defining_conjugation(g, u, reading) * u;
  return max_abs_coeff(lhs - MultivectorF::unit(u.sig(), u.field()));
}

bool algebra_contains(GroupId g, const Multivector& x) {
  AlgebraClasses classes = algebra_classes(g);
  for (const auto& [mask, c] : x.terms()) {
    int t = blade_grade(mask) % 4;
    bool ok = false;
    if (classes.real[t] && c.im == 0) ok = true;
    if (classes.imag[t] && c.re == 0) ok = true;
    if (classes.real[t] && classes.imag[t]) ok = true;  // never happens for these groups
    if (!ok) return false;
  }
  return true;
}

long long algebra_dim_count(GroupId g, Signature sig) {
  AlgebraClasses classes = algebra_classes(g);
  long long dim = 0;
  for (int k = 0; k <= sig.n(); ++k) {
    if (classes.real[k % 4]) dim += binom(sig.n(), k);
    if (classes.imag[k % 4]) dim += binom(sig.n(), k);
  }
  return dim;
}

LieAlgebraSpace algebra_basis(GroupId g, Signature sig) {
  AlgebraClasses classes = algebra_classes(g);
  LieAlgebraSpace space{g, sig, {}, 0};
  std::vector<std::uint32_t> masks;
  for (std::uint32_t mask = 0; mask < (std::uint32_t(1) << sig.n()); ++mask)
    if (classes.real[blade_grade(mask) % 4] || classes.imag[blade_grade(mask) % 4])
      masks.push_back(mask);
  std::sort(masks.begin(), masks.end(), [](std::uint32_t a, std::uint32_t b) {
    int ga = blade_grade(a), gb = blade_grade(b);
    return ga != gb ? ga < gb : a < b;
  });
  Field field = (g == GroupId::SpO2i1 || g == GroupId::SpO2i3) ? Field::Complex : Field::Real;
  for (std::uint32_t mask : masks) {
    bool imag = classes.imag[blade_grade(mask) % 4];
    space.basis.push_back(Multivector::blade(
        sig, field, mask, imag ? CRat(Rational(0), Rational(1)) : CRat(Rational(1))));
  }
  space.dim = int(space.basis.size());

  // Commutator closure: for blade bases each bracket is again (up to sign) a
  // scaled blade, so a per-term class check decides span membership exactly.
  for (std::size_t i = 0; i < space.basis.size(); ++i)
    for (std::size_t j = i + 1; j < space.basis.size(); ++j) {
      Multivector br = commutator(space.basis[i], space.basis[j]);
      if (!algebra_contains(g, br))
        throw std::logic_error("algebra_basis: commutator left the subspace for " +
                               group_display(g) + " " + sig.str());
    }
  return space;
}

ClassicalGroupDescriptor classify_group(GroupId g, Signature sig) {
  if (!group_in_scope(g, sig))
    throw OutOfScopeError(group_display(g) + " " + sig.str() + " out of scope: " +
                          group_scope_rule(g));
  const int n = sig.n(), p = sig.p, q = sig.q;
  auto O = [](long long m, int mult = 1) {
    return ClassicalGroupDescriptor{GroupFamily::O, m, mult};
  };
  auto Omm = [](long long m, int mult = 1) {
    return ClassicalGroupDescriptor{GroupFamily::SplitO, m, mult};
  };
  auto Sp = [](long long m, int mult = 1) {
    return ClassicalGroupDescriptor{GroupFamily::Sp, m, mult};
  };
  auto GL = [](long long m) { return ClassicalGroupDescriptor{GroupFamily::GL, m, 1}; };

  switch (g) {
    case GroupId::SpO23:
      if (q == 0) return n % 2 == 0 ? O(pow2ll(n / 2)) : O(pow2ll((n - 1) / 2), 2);
      switch (n % 8) {
        case 0: case 2: return Omm(pow2ll(n / 2 - 1));
        case 4: case 6: return Sp(pow2ll(n / 2 - 1));
        case 1: return Omm(pow2ll((n - 1) / 2 - 1), 2);
        case 5: return Sp(pow2ll((n - 1) / 2 - 1), 2);
        default: return GL(pow2ll((n - 1) / 2));  // n = 3, 7 (mod 8)
      }
    case GroupId::SpO12:
      if (p == 0) return n % 2 == 0 ? O(pow2ll(n / 2)) : O(pow2ll((n - 1) / 2), 2);
      switch (n % 8) {
        case 0: case 6: return Omm(pow2ll(n / 2 - 1));
        case 2: case 4: return Sp(pow2ll(n / 2 - 1));
        case 7: return Omm(pow2ll((n - 1) / 2 - 1), 2);
        case 3: return Sp(pow2ll((n - 1) / 2 - 1), 2);
        default: return GL(pow2ll((n - 1) / 2));  // n = 1, 5 (mod 8)
      }
    case GroupId::SpO2i1:
      if (q == 0) return n % 2 == 0 ? O(pow2ll(n / 2)) : O(pow2ll((n - 1) / 2), 2);
      switch (n % 8) {
        case 0: case 6: return Omm(pow2ll(n / 2 - 1));
        case 2: case 4: return Sp(pow2ll(n / 2 - 1));
        case 7: return Omm(pow2ll((n - 1) / 2 - 1), 2);
        case 3: return Sp(pow2ll((n - 1) / 2 - 1), 2);
        default: return GL(pow2ll((n - 1) / 2));  // n = 1, 5 (mod 8)
      }
    case GroupId::SpO2i3:
      if (p == 0) return n % 2 == 0 ? O(pow2ll(n / 2)) : O(pow2ll((n - 1) / 2), 2);
      switch (n % 8) {
        case 0: case 2: return Omm(pow2ll(n / 2 - 1));
        case 4: case 6: return Sp(pow2ll(n / 2 - 1));
        case 1: return Omm(pow2ll((n - 1) / 2 - 1), 2);
        case 5: return Sp(pow2ll((n - 1) / 2 - 1), 2);
        default: return GL(pow2ll((n - 1) / 2));  // n = 3, 7 (mod 8)
      }
    case GroupId::SpO2:
      if (p == 0 || q == 0)
        return n % 2 == 1 ? O(pow2ll((n - 1) / 2)) : O(pow2ll((n - 2) / 2), 2);
      switch (n % 8) {
        case 1: case 7: return Omm(pow2ll((n - 1) / 2 - 1));
        case 3: case 5: return Sp(pow2ll((n - 1) / 2 - 1));
        case 0: return Omm(pow2ll((n - 2) / 2 - 1), 2);
        case 4: return Sp(pow2ll((n - 2) / 2 - 1), 2);
        default: return GL(pow2ll((n - 2) / 2));  // n = 2, 6 (mod 8)
      }
  }
  throw std::logic_error("classify_group: bad group");
}

ClassicalGroupDescriptor classify_algebra(GroupId g, Signature sig) {
  ClassicalGroupDescriptor desc = classify_group(g, sig);
  if (algebra_dim_count(g, sig) != desc.algebra_dim())
    throw std::logic_error("classify_algebra: dimension law violated for " + group_display(g) +
                           " " + sig.str());
  return desc;
}

Multivector TransportMap::apply(const Multivector& u) const {
  if (!(u.sig() == src)) throw std::invalid_argument("transport: signature mismatch");
  Multivector out(dst, Field::Complex);
  for (const auto& [mask, c] : u.terms()) {
    const Entry& e = table[mask];
    if (!e.defined)
      throw std::invalid_argument("transport: multivector outside the map's carrier");
    out.add_term(e.mask, c * CRat(Rational(e.re), Rational(e.im)));
  }
  return out;
}

MultivectorF TransportMap::apply(const MultivectorF& u) const {
  if (!(u.sig() == src)) throw std::invalid_argument("transport: signature mismatch");
  MultivectorF out(dst, Field::Complex);
  for (const auto& [mask, c] : u.terms()) {
    const Entry& e = table[mask];
    if (!e.defined)
      throw std::invalid_argument("transport: multivector outside the map's carrier");
    out.add_term(e.mask, c * std::complex<double>(e.re, e.im));
  }
  return out;
}

TransportMap TransportMap::inverted() const {
  TransportMap inv;
  inv.src = dst;
  inv.dst = src;
  inv.table.assign(std::size_t(1) << dst.n(), Entry{});
  for (std::uint32_t mask = 0; mask < table.size(); ++mask) {
    const Entry& e = table[mask];
    if (!e.defined) continue;
    Entry& slot = inv.table[e.mask];
    if (slot.defined) throw std::logic_error("transport: map is not injective on blades");
    slot = Entry{true, mask, e.re, -e.im};  // unit inverse = complex conjugate
  }
  return inv;
}

TransportMap TransportMap::composed(const TransportMap& first, const TransportMap& then) {
  if (!(first.dst == then.src)) throw std::logic_error("transport composition: type mismatch");
  TransportMap out;
  out.src = first.src;
  out.dst = then.dst;
  out.table.assign(first.table.size(), Entry{});
  for (std::uint32_t mask = 0; mask < first.table.size(); ++mask) {
    const Entry& e1 = first.table[mask];
    if (!e1.defined) continue;
    const Entry& e2 = then.table[e1.mask];
    if (!e2.defined) continue;
    out.table[mask] = Entry{true, e2.mask, e1.re * e2.re - e1.im * e2.im,
                            e1.re * e2.im + e1.im * e2.re};
  }
  return out;
}

namespace {

// Multiplicative extension of a generator substitution: each source blade
// maps to a single signed (possibly i-multiplied) blade of the target.
TransportMap substitution_map(Signature from, Signature to,
                              const std::vector<TransportMap::Entry>& gen_images) {
  if (int(gen_images.size()) != from.n())
    throw std::logic_error("substitution_map: generator image count mismatch");
  TransportMap map;
  map.src = from;
  map.dst = to;
  map.table.assign(std::size_t(1) << from.n(), TransportMap::Entry{});
  map.table[0] = {true, 0, 1, 0};
  for (std::uint32_t mask = 1; mask < map.table.size(); ++mask) {
    int low = std::countr_zero(mask);
    const TransportMap::Entry& head = gen_images[low];
    const TransportMap::Entry& rest = map.table[mask & (mask - 1)];
    BladeProduct bp = blade_product(head.mask, rest.mask, to);
    int re = head.re * rest.re - head.im * rest.im;
    int im = head.re * rest.im + head.im * rest.re;
    map.table[mask] = {true, bp.mask, re * bp.sign, im * bp.sign};
  }
  return map;
}

std::uint32_t bit(int a) { return std::uint32_t(1) << (a - 1); }  // 1-based

// f^a -> e^a e^n realizes Cl(p, q-1) on the even part of Cl(p, q).
TransportMap even_embedding_q(Signature upper) {
  Signature lower(upper.p, upper.q - 1);
  std::vector<TransportMap::Entry> images;
  for (int a = 1; a <= lower.n(); ++a)
    images.push_back({true, bit(a) | bit(upper.n()), 1, 0});
  return substitution_map(lower, upper, images);
}

// f^a -> e^1 e^sigma(a) realizes Cl(q, p-1) on the even part of Cl(p, q).
TransportMap even_embedding_p(Signature upper) {
  Signature lower(upper.q, upper.p - 1);
  std::vector<TransportMap::Entry> images;
  for (int j = 1; j <= upper.q; ++j)
    images.push_back({true, bit(1) | bit(upper.p + j), 1, 0});
  for (int b = 1; b <= upper.p - 1; ++b)
    images.push_back({true, bit(1) | bit(1 + b), 1, 0});
  return substitution_map(lower, upper, images);
}

// f^a -> i e^sigma(a) realizes Cl(q, p) on the even (+) i*odd part of the
// complexified Cl(p, q).
TransportMap i_twist_embedding(Signature upper) {
  Signature lower(upper.q, upper.p);
  std::vector<TransportMap::Entry> images;
  for (int j = 1; j <= upper.q; ++j) images.push_back({true, bit(upper.p + j), 0, 1});
  for (int b = 1; b <= upper.p; ++b) images.push_back({true, bit(b), 0, 1});
  return substitution_map(lower, upper, images);
}

}  // namespace

Theorem41Map theorem41_map(GroupId g, Signature sig, TransportVariant variant) {
  switch (variant) {
    case TransportVariant::ITwist: {
      if (g != GroupId::SpO2i1 && g != GroupId::SpO2i3)
        throw std::invalid_argument("theorem41_map: i-twist applies to the 2i groups");
      TransportMap fwd = i_twist_embedding(sig).inverted();
      return {g, g == GroupId::SpO2i1 ? GroupId::SpO12 : GroupId::SpO23, std::move(fwd)};
    }
    case TransportVariant::EvenToLowerQ: {
      if (g != GroupId::SpO2)
        throw std::invalid_argument("theorem41_map: even-to-lower applies to SpO_2");
      if (sig.q < 1) throw std::invalid_argument("theorem41_map: requires q >= 1");
      return {g, GroupId::SpO12, even_embedding_q(sig).inverted()};
    }
    case TransportVariant::EvenToLowerP: {
      if (g != GroupId::SpO2)
        throw std::invalid_argument("theorem41_map: even-to-lower applies to SpO_2");
      if (sig.p < 1) throw std::invalid_argument("theorem41_map: requires p >= 1");
      return {g, GroupId::SpO12, even_embedding_p(sig).inverted()};
    }
    case TransportVariant::Swap: {
      if (g != GroupId::SpO2)
        throw std::invalid_argument("theorem41_map: swap applies to SpO_2");
      Signature flipped(sig.q, sig.p);
      if (sig.p >= 1) {
        TransportMap down = even_embedding_p(sig).inverted();          // (p,q) -> (q,p-1)
        TransportMap up = even_embedding_q(flipped);                   // (q,p-1) -> (q,p)
        return {g, g, TransportMap::composed(down, up)};
      }
      if (sig.q >= 1) {
        TransportMap down = even_embedding_q(sig).inverted();          // (0,q) -> (0,q-1)
        TransportMap up = even_embedding_p(flipped);                   // (0,q-1) -> (q,0)
        return {g, g, TransportMap::composed(down, up)};
      }
      throw std::invalid_argument("theorem41_map: swap needs n >= 1");
    }
  }
  throw std::logic_error("theorem41_map: bad variant");
}

bool spin_member(const Multivector& u) {
  if (!u.is_real()) return false;
  if (!u.is_even()) return false;
  const Signature& s = u.sig();
  Multivector e = Multivector::unit(s, u.field());
  Multivector rev = u.reversed();
  if (!(rev * u == e)) return false;
  for (int a = 1; a <= s.n(); ++a) {
    Multivector conj = u * Multivector::generator(s, u.field(), a) * rev;
    if (!(conj.grade_part(1) == conj)) return false;
  }
  return true;
}

double spin_residual(const MultivectorF& u) {
  const Signature& s = u.sig();
  for (const auto& [mask, c] : u.terms())
    if (blade_grade(mask) % 2 != 0 || c.imag() != 0.0)
      throw std::invalid_argument("spin_residual: multivector must be real and even");
  MultivectorF rev = u.reversed();
  double r = max_abs_coeff(rev * u - MultivectorF::unit(s, u.field()));
  for (int a = 1; a <= s.n(); ++a) {
    MultivectorF conj = u * MultivectorF::generator(s, u.field(), a) * rev;
    r = std::max(r, max_abs_coeff(conj - conj.grade_part(1)));
  }
  return r;
}

namespace {

// How the defining equation of a (real-scope) group reads on normalized
// matrices: plain orthogonality, a bilinear form, the same form on each of
// the two blocks, or the split identity of the general linear case.
struct RelationPlan {
  enum class Kind { OrthId, Form, BlockForm, GLSplit };
  Kind kind = Kind::OrthId;
  std::optional<Side> normalize_side;
  std::optional<CanonicalForm> form;  // absent for OrthId and identity-form GL
};

RelationPlan relation_plan(GroupId g, Signature sig) {
  const int n = sig.n(), p = sig.p, q = sig.q;
  RelationPlan plan;
  auto form_p = [&] { return p % 4 == 2 || p % 4 == 3 ? CanonicalForm::Omega : CanonicalForm::J; };
  auto form_q = [&] { return q % 4 == 1 || q % 4 == 2 ? CanonicalForm::Omega : CanonicalForm::J; };
  if (g == GroupId::SpO23) {
    if (q == 0) return plan;  // U~ = U^T directly
    if (n % 2 == 0) {
      plan.kind = RelationPlan::Kind::Form;
      plan.normalize_side = p % 2 == 1 ? Side::P : Side::Q;
      plan.form = p % 2 == 1 ? form_p() : form_q();
      return plan;
    }
    if (p % 2 == 1) {  // q even and nonzero: block-diagonal two-factor case
      plan.kind = RelationPlan::Kind::BlockForm;
      plan.normalize_side = Side::Q;
      plan.form = form_q();
      return plan;
    }
    plan.kind = RelationPlan::Kind::GLSplit;  // p even, q odd
    if (p != 0) {
      plan.normalize_side = Side::P;
      plan.form = form_p();
    }
    return plan;
  }
  if (g == GroupId::SpO12) {
    if (p == 0) return plan;
    if (n % 2 == 0) {
      plan.kind = RelationPlan::Kind::Form;
      plan.normalize_side = q % 2 == 1 ? Side::Q : Side::P;
      plan.form = q % 2 == 1 ? form_q() : form_p();
      return plan;
    }
    if (p % 2 == 0) {  // p even nonzero, q odd
      plan.kind = RelationPlan::Kind::BlockForm;
      plan.normalize_side = Side::P;
      plan.form = form_p();
      return plan;
    }
    plan.kind = RelationPlan::Kind::GLSplit;  // p odd, q even
    if (q != 0) {
      plan.normalize_side = Side::Q;
      plan.form = form_q();
    }
    return plan;
  }
  throw std::logic_error("relation_plan: only real-scope groups have matrix plans");
}

void check_plan_descriptor(const RelationPlan& plan, Signature target_sig, int dim,
                           const ClassicalGroupDescriptor& desc) {
  GroupFamily want;
  int mult = 1;
  long long size = dim;
  switch (plan.kind) {
    case RelationPlan::Kind::OrthId:
      want = GroupFamily::O;
      mult = target_sig.n() % 2 == 1 ? 2 : 1;
      if (mult == 2) size = dim / 2;
      break;
    case RelationPlan::Kind::Form:
      want = *plan.form == CanonicalForm::Omega ? GroupFamily::Sp : GroupFamily::SplitO;
      break;
    case RelationPlan::Kind::BlockForm:
      want = *plan.form == CanonicalForm::Omega ? GroupFamily::Sp : GroupFamily::SplitO;
      mult = 2;
      size = dim / 2;
      break;
    case RelationPlan::Kind::GLSplit:
      want = GroupFamily::GL;
      size = dim / 2;
      break;
  }
  if (want != desc.family || mult != desc.multiplicity || size != desc.matrix_size())
    throw std::logic_error("isomorphism_witness: matrix plan disagrees with the classification");
}

// Exponential series evaluated directly in the algebra; the fallback
// exponentiation route for signatures without a real matrix representation.
MultivectorF exp_series(const MultivectorF& x) {
  MultivectorF sum = MultivectorF::unit(x.sig(), x.field());
  MultivectorF term = sum;
  for (int k = 1; k <= 96; ++k) {
    term = std::complex<double>(1.0 / k) * (term * x);
    sum = sum + term;
    if (max_abs_coeff(term) < 1e-16) break;
  }
  return sum;
}

struct Sampler {
  GroupId group;
  Signature sig;
  GroupId target_group;
  Signature target_sig;
  std::optional<TransportMap> forward;  // absent when already in real scope
  std::optional<TransportMap> backward;
  std::vector<Multivector> basis;         // source Lie algebra
  std::vector<MultivectorF> target_basis; // transported, float view
  RelationPlan plan;
  std::optional<Representation> rep;       // normalized per plan
  std::optional<BladeMatrixTable> table;   // absent in series mode

  Sampler(GroupId g, Signature s) : group(g), sig(s), target_group(g), target_sig(s) {
    if (g == GroupId::SpO2i1 || g == GroupId::SpO2i3) {
      Theorem41Map t41 = theorem41_map(g, s, TransportVariant::ITwist);
      target_group = t41.dst_group;
      target_sig = t41.map.dst;
      forward = std::move(t41.map);
    } else if (g == GroupId::SpO2 && s.n() >= 1) {
      Theorem41Map t41 = theorem41_map(
          g, s, s.q >= 1 ? TransportVariant::EvenToLowerQ : TransportVariant::EvenToLowerP);
      target_group = t41.dst_group;
      target_sig = t41.map.dst;
      forward = std::move(t41.map);
    }
    if (forward) backward = forward->inverted();

    LieAlgebraSpace space = algebra_basis(group, sig);
    basis = std::move(space.basis);

    if (rep_in_scope(target_sig)) {
      for (const Multivector& b : basis)
        target_basis.push_back(to_float(forward ? forward->apply(b) : b));
      plan = relation_plan(target_group, target_sig);
      rep = build_representation(target_sig);
      if (plan.normalize_side) rep = normalize_rep(*rep, *plan.normalize_side);
      table.emplace(*rep);
    } else {
      // Out-of-classification-scope signature: exponentiate by the series in
      // the source algebra instead of through a representation.
      forward.reset();
      backward.reset();
      for (const Multivector& b : basis) target_basis.push_back(to_float(b));
      target_group = group;
      target_sig = sig;
    }
  }

  bool has_matrix_route() const { return table.has_value(); }

  // One sampled group element: the matrix exponential of a random algebra
  // element, plus its multivector pullback in the source carrier.
  struct Sample {
    std::optional<Mat<double>> matrix;
    MultivectorF source;
  };

  Sample draw(SplitMix64& rng, double scale) const {
    MultivectorF x(target_sig, Field::Complex);
    for (const MultivectorF& b : target_basis) {
      double c = rng.symmetric(scale);
      for (const auto& [mask, bc] : b.terms()) x.add_term(mask, c * bc);
    }
    if (!table) {
      double norm = max_abs_coeff(x);
      if (norm > 2.0) x = std::complex<double>(2.0 / norm) * x;
      return {std::nullopt, exp_series(x)};
    }
    // Rescale large draws: the exponential of a non-compact direction grows
    // like e^{|X|} and would eat the verification tolerance.
    Mat<double> m = table->represent_real(x);
    double norm = max_abs(m);
    if (norm > 2.0) m = (2.0 / norm) * m;
    Mat<double> a = mat_exp(m);
    MultivectorF target_mv = table->reconstruct(a);
    return {std::move(a), backward ? backward->apply(target_mv) : std::move(target_mv)};
  }
};

double off_block_residual(const Mat<double>& a) {
  return std::max(max_abs(a.top_right_block()), max_abs(a.bottom_left_block()));
}

}  // namespace

MultivectorF sample_group_element(GroupId g, Signature sig, std::uint64_t seed, double scale) {
  Sampler sampler(g, sig);
  SplitMix64 rng(seed);
  return sampler.draw(rng, scale).source;
}

CellReport isomorphism_witness(GroupId g, Signature sig, int samples, std::uint64_t seed,
                               double tol) {
  if (samples < 1) throw std::invalid_argument("isomorphism_witness: samples must be >= 1");
  if (tol <= 0) throw std::invalid_argument("isomorphism_witness: tol must be positive");

  CellReport report{g, sig, classify_group(g, sig), algebra_dim_count(g, sig), {}, false};
  auto add_check = [&](const std::string& name, double residual, bool pass) {
    report.checks.push_back({name, residual, pass});
  };

  add_check("dimension_law", 0.0, report.lie_dim == report.descriptor.algebra_dim());

  bool closure_ok = true;
  try {
    algebra_basis(g, sig);
  } catch (const std::logic_error&) {
    closure_ok = false;
  }
  add_check("algebra_closure", 0.0, closure_ok);

  Sampler sampler(g, sig);
  if (!sampler.has_matrix_route())
    throw std::logic_error("isomorphism_witness: no matrix route for an in-scope cell");

  if (sampler.forward && sampler.target_sig.n() >= 1) {
    bool match = classify_group(sampler.target_group, sampler.target_sig) == report.descriptor;
    add_check("transport_descriptor", 0.0, match);
  }
  if (sampler.forward) {
    bool anti = true;
    for (const Multivector& b : sampler.basis) {
      Multivector tb = sampler.forward->apply(b);
      if (!(defining_conjugation(sampler.target_group, tb, ConjugationReading::PseudoHermitian) ==
            -tb)) {
        anti = false;
        break;
      }
    }
    add_check("transport_algebra", 0.0, anti);
  }

  check_plan_descriptor(sampler.plan, sampler.target_sig, sampler.rep->dim, report.descriptor);

  if (sampler.target_sig.n() <= 6) {
    TransposeIdentityReport tr = check_transpose_identities(*sampler.rep);
    add_check("transpose_identities", 0.0, tr.all_pass);
  }

  const int dim = sampler.rep->dim;
  const bool odd_target = sampler.target_sig.n() % 2 == 1;
  std::optional<Mat<double>> form_full, form_half;
  if (sampler.plan.form) {
    if (sampler.plan.kind == RelationPlan::Kind::Form)
      form_full = to_float(canonical_matrix(*sampler.plan.form, dim));
    else
      form_half = to_float(canonical_matrix(*sampler.plan.form, dim / 2));
  }

  SplitMix64 rng(seed);
  double relation_max = 0.0, block_max = 0.0, membership_max = 0.0;
  double min_det = std::numeric_limits<double>::infinity();
  const bool gl = sampler.plan.kind == RelationPlan::Kind::GLSplit;

  // Secondary cross-check: when the source signature itself has a real
  // representation, the complexified image must satisfy the pseudo-unitary
  // relation A^dagger F A = F.
  std::optional<Representation> cross_rep;
  std::optional<BladeMatrixTable> cross_table;
  std::optional<Mat<double>> cross_form;
  if ((g == GroupId::SpO2i1 || g == GroupId::SpO2i3) && mod8(sig.p - sig.q) == 0) {
    bool odd_parity = sig.p % 2 == 1;  // p and q share parity here
    std::optional<Side> side;
    std::optional<CanonicalForm> cform;
    if (g == GroupId::SpO2i1) {
      if (odd_parity) {
        side = Side::P;
        cform = theorem31_case(sig, Side::P);
      } else if (sig.q != 0) {
        side = Side::Q;
        cform = theorem31_case(sig, Side::Q);
      }
    } else {
      if (odd_parity) {
        side = Side::Q;
        cform = theorem31_case(sig, Side::Q);
      } else if (sig.p != 0) {
        side = Side::P;
        cform = theorem31_case(sig, Side::P);
      }
    }
    cross_rep = build_representation(sig);
    if (side && cform) cross_rep = normalize_rep(*cross_rep, *side);
    cross_table.emplace(*cross_rep);
    cross_form = cform ? to_float(canonical_matrix(*cform, cross_rep->dim))
                       : Mat<double>::identity(cross_rep->dim);
  }
  double cross_max = 0.0;

  for (int s = 0; s < samples; ++s) {
    Sampler::Sample sample = sampler.draw(rng, 1.0);
    const Mat<double>& a = *sample.matrix;

    switch (sampler.plan.kind) {
      case RelationPlan::Kind::OrthId:
        relation_max = std::max(
            relation_max, max_abs(a.transposed() * a - Mat<double>::identity(dim)));
        break;
      case RelationPlan::Kind::Form:
        relation_max =
            std::max(relation_max, max_abs(a.transposed() * (*form_full) * a - *form_full));
        break;
      case RelationPlan::Kind::BlockForm: {
        Mat<double> b1 = a.top_left_block(), b2 = a.bottom_right_block();
        relation_max = std::max(
            relation_max, max_abs(b1.transposed() * (*form_half) * b1 - *form_half));
        relation_max = std::max(
            relation_max, max_abs(b2.transposed() * (*form_half) * b2 - *form_half));
        break;
      }
      case RelationPlan::Kind::GLSplit: {
        Mat<double> m1 = a.top_left_block(), m2 = a.bottom_right_block();
        Mat<double> gmat = form_half ? *form_half : Mat<double>::identity(dim / 2);
        relation_max = std::max(relation_max, max_abs(m2.transposed() * gmat * m1 - gmat));
        min_det = std::min({min_det, std::abs(det(m1)), std::abs(det(m2))});
        break;
      }
    }
    if (odd_target) block_max = std::max(block_max, off_block_residual(a));
    membership_max = std::max(membership_max, membership_residual(g, sample.source));

    if (cross_table) {
      Mat<std::complex<double>> ac = cross_table->represent(sample.source);
      Mat<std::complex<double>> f(cross_rep->dim);
      for (int i = 0; i < cross_rep->dim; ++i)
        for (int j = 0; j < cross_rep->dim; ++j) f.at(i, j) = cross_form->at(i, j);
      cross_max = std::max(cross_max, max_abs(ac.conj_transposed() * f * ac - f));
    }
  }

  add_check("classical_relation", relation_max, relation_max < tol);
  if (odd_target) add_check("block_structure", block_max, block_max < tol);
  if (gl) add_check("gl_invertibility", min_det, min_det > 1e-9);
  add_check("membership", membership_max, membership_max < tol);
  if (cross_table) add_check("hermitian_cross", cross_max, cross_max < tol);

  report.pass = std::all_of(report.checks.begin(), report.checks.end(),
                            [](const CheckResult& c) { return c.pass; });
  return report;
}

}  // namespace cliff
