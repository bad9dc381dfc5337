#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "cliff/groups.hpp"
#include "classify_oracle.hpp"
#include "oracle.hpp"

using namespace cliff;

namespace {

Multivector mv(const std::string& text, Signature sig, Field f = Field::Real) {
  return parse_multivector(text, sig, f);
}

// Exact members of the reversion-type groups: rational points on the circle
// for a square -e blade, on the hyperbola for a square +e blade.
Multivector exact_rotor(Signature sig, std::uint32_t mask) {
  Multivector b = Multivector::blade(sig, Field::Real, mask, CRat(Rational(1)));
  Multivector sq = b * b;
  Multivector u(sig, Field::Real);
  if (sq == -Multivector::unit(sig, Field::Real)) {
    u.add_term(0, CRat(Rational(3, 5)));
    u.add_term(mask, CRat(Rational(4, 5)));
  } else {
    u.add_term(0, CRat(Rational(5, 4)));
    u.add_term(mask, CRat(Rational(3, 4)));
  }
  return u;
}

std::vector<Signature> scoped_signatures(GroupId g, int max_n) {
  std::vector<Signature> out;
  for (int n = 1; n <= max_n; ++n)
    for (int p = 0; p <= n; ++p)
      if (group_in_scope(g, Signature(p, n - p))) out.push_back(Signature(p, n - p));
  return out;
}

const CheckResult* find_check(const CellReport& report, const std::string& name) {
  for (const CheckResult& c : report.checks)
    if (c.name == name) return &c;
  return nullptr;
}

}  // namespace

TEST_CASE("scopes") {
  CHECK(group_in_scope(GroupId::SpO2i1, Signature(1, 3)));
  CHECK(group_in_scope(GroupId::SpO23, Signature(2, 0)));
  CHECK_FALSE(group_in_scope(GroupId::SpO23, Signature(0, 1)));
  CHECK_FALSE(group_in_scope(GroupId::SpO2, Signature(2, 0)));
  CHECK_FALSE(group_in_scope(GroupId::SpO2, Signature(0, 0)));
  CHECK(group_in_scope(GroupId::SpO2, Signature(1, 2)));
}

TEST_CASE("membership: identity belongs to all five groups") {
  Signature sig(1, 1);
  for (GroupId g : kAllGroups) {
    Field f = (g == GroupId::SpO2i1 || g == GroupId::SpO2i3) ? Field::Complex : Field::Real;
    CHECK(is_member(g, Multivector::unit(sig, f)));
  }
}

TEST_CASE("membership: frozen examples") {
  CHECK(is_member(GroupId::SpO23, mv("e1", Signature(1, 1))));
  CHECK_FALSE(is_member(GroupId::SpO23, mv("e2", Signature(1, 1))));  // squares to -e

  // cos t + sin t e1e2 in Cl(2,0), rational point on the circle
  Multivector rotor = exact_rotor(Signature(2, 0), 0b11);
  CHECK(is_member(GroupId::SpO2, rotor));
  CHECK(is_member(GroupId::SpO23, rotor));

  // i e1 in Cl(1,3) is pseudo-hermitian unitary
  Multivector ie1 = mv("i*e1", Signature(1, 3), Field::Complex);
  CHECK(is_member(GroupId::SpO2i1, ie1));
}

TEST_CASE("membership: carrier violations throw") {
  Signature sig(1, 1);
  CHECK_THROWS_AS(is_member(GroupId::SpO2, mv("e1", sig)), std::invalid_argument);
  CHECK_THROWS_AS(is_member(GroupId::SpO23, mv("i*e1", sig, Field::Complex)),
                  std::invalid_argument);
  CHECK_THROWS_AS(is_member(GroupId::SpO2i1, mv("i*1", sig, Field::Complex)),
                  std::invalid_argument);  // imaginary even part
}

TEST_CASE("membership: the hermitian reading coincides for (n,0) and differs in general") {
  // For q = 0 the two conjugations agree, so both readings give one group.
  Signature s20(2, 0);
  Multivector r = exact_rotor(s20, 0b11).complexified();
  CHECK(is_member(GroupId::SpO2i1, r, ConjugationReading::PseudoHermitian));
  CHECK(is_member(GroupId::SpO2i1, r, ConjugationReading::Hermitian));
}

TEST_CASE("membership closure: products and inverses of exact members") {
  SplitMix64 rng(71);
  for (int n = 2; n <= 5; ++n)
    for (int p : {0, n / 2, n}) {
      Signature sig(p, n - p);
      std::vector<std::uint32_t> grade2;
      for (std::uint32_t mask = 0; mask < (1u << n); ++mask)
        if (blade_grade(mask) == 2) grade2.push_back(mask);
      for (int t = 0; t < 6; ++t) {
        Multivector u = exact_rotor(sig, grade2[rng.next() % grade2.size()]);
        Multivector v = exact_rotor(sig, grade2[rng.next() % grade2.size()]);
        Multivector w = u * v;
        CHECK(is_member(GroupId::SpO23, w));
        CHECK(is_member(GroupId::SpO2, w));
        CHECK(is_member(GroupId::SpO12, w));  // even elements: involution twist is inert
        CHECK(is_member(GroupId::SpO23, w.reversed()));  // the inverse is the conjugate
        CHECK(w.reversed() * w == Multivector::unit(sig, Field::Real));
      }
    }
}

TEST_CASE("algebra bases: frozen contents and dimensions") {
  LieAlgebraSpace s23 = algebra_basis(GroupId::SpO23, Signature(2, 0));
  CHECK(s23.dim == 1);
  CHECK(s23.basis[0] == mv("e1e2", Signature(2, 0)));

  LieAlgebraSpace s2i1 = algebra_basis(GroupId::SpO2i1, Signature(1, 3));
  CHECK(s2i1.dim == 10);
  int imag_count = 0, grade2 = 0;
  for (const Multivector& b : s2i1.basis) {
    const auto& [mask, c] = *b.terms().begin();
    if (c.re == 0) {
      ++imag_count;
      CHECK(blade_grade(mask) == 1);
    } else {
      ++grade2;
      CHECK(blade_grade(mask) == 2);
    }
  }
  CHECK(imag_count == 4);
  CHECK(grade2 == 6);

  LieAlgebraSpace s2 = algebra_basis(GroupId::SpO2, Signature(3, 0));
  CHECK(s2.dim == 3);
  CHECK(s2.basis[0] == mv("e1e2", Signature(3, 0)));
  CHECK(s2.basis[1] == mv("e1e3", Signature(3, 0)));
  CHECK(s2.basis[2] == mv("e2e3", Signature(3, 0)));
}

TEST_CASE("algebra bases: closure for every in-scope cell, n <= 6") {
  for (GroupId g : kAllGroups)
    for (const Signature& s : scoped_signatures(g, 6))
      CHECK_NOTHROW(algebra_basis(g, s));  // closure asserted inside
}

TEST_CASE("dimension law for every in-scope cell, n <= 8") {
  for (GroupId g : kAllGroups)
    for (const Signature& s : scoped_signatures(g, 8)) {
      ClassicalGroupDescriptor d = classify_group(g, s);
      CHECK(algebra_dim_count(g, s) == d.algebra_dim());
      CHECK_NOTHROW(classify_algebra(g, s));
    }
}

TEST_CASE("classification: frozen rows") {
  auto desc = classify_group(GroupId::SpO2i1, Signature(1, 3));
  CHECK(desc == ClassicalGroupDescriptor{GroupFamily::Sp, 2, 1});
  CHECK(desc.matrix_size() == 4);
  CHECK(desc.algebra_dim() == 10);
  CHECK(desc.group_name() == "Sp(2,R)");

  CHECK(classify_group(GroupId::SpO23, Signature(2, 0)) ==
        ClassicalGroupDescriptor{GroupFamily::O, 2, 1});
  CHECK(classify_group(GroupId::SpO23, Signature(1, 1)) ==
        ClassicalGroupDescriptor{GroupFamily::SplitO, 1, 1});
  CHECK(classify_group(GroupId::SpO23, Signature(3, 3)) ==
        ClassicalGroupDescriptor{GroupFamily::Sp, 4, 1});
  CHECK(classify_group(GroupId::SpO23, Signature(1, 0)) ==
        ClassicalGroupDescriptor{GroupFamily::O, 1, 2});
  CHECK(classify_group(GroupId::SpO23, Signature(8, 0)) ==
        ClassicalGroupDescriptor{GroupFamily::O, 16, 1});
  CHECK(classify_group(GroupId::SpO12, Signature(0, 7)) ==
        ClassicalGroupDescriptor{GroupFamily::O, 8, 2});
  CHECK(classify_group(GroupId::SpO12, Signature(2, 1)) ==
        ClassicalGroupDescriptor{GroupFamily::Sp, 1, 2});
  CHECK(classify_group(GroupId::SpO12, Signature(1, 0)) ==
        ClassicalGroupDescriptor{GroupFamily::GL, 1, 1});
  CHECK(classify_group(GroupId::SpO2i1, Signature(6, 0)) ==
        ClassicalGroupDescriptor{GroupFamily::O, 8, 1});
  CHECK(classify_group(GroupId::SpO2i1, Signature(7, 0)) ==
        ClassicalGroupDescriptor{GroupFamily::O, 8, 2});
  CHECK(classify_group(GroupId::SpO2i3, Signature(0, 2)) ==
        ClassicalGroupDescriptor{GroupFamily::O, 2, 1});
  CHECK(classify_group(GroupId::SpO2, Signature(2, 1)) ==
        ClassicalGroupDescriptor{GroupFamily::Sp, 1, 1});
  CHECK(classify_group(GroupId::SpO2, Signature(1, 2)) ==
        ClassicalGroupDescriptor{GroupFamily::Sp, 1, 1});
  CHECK(classify_group(GroupId::SpO2, Signature(1, 1)) ==
        ClassicalGroupDescriptor{GroupFamily::GL, 1, 1});
  CHECK(classify_group(GroupId::SpO2, Signature(8, 0)) ==
        ClassicalGroupDescriptor{GroupFamily::O, 8, 2});
  CHECK(classify_group(GroupId::SpO2, Signature(4, 4)) ==
        ClassicalGroupDescriptor{GroupFamily::SplitO, 4, 2});
  CHECK(classify_group(GroupId::SpO2, Signature(1, 0)) ==
        ClassicalGroupDescriptor{GroupFamily::O, 1, 1});

  CHECK_THROWS_AS(classify_group(GroupId::SpO23, Signature(0, 1)), OutOfScopeError);
  CHECK_THROWS_AS(classify_group(GroupId::SpO2, Signature(0, 2)), OutOfScopeError);
}

TEST_CASE("classification agrees with the proof-route oracle, n <= 10") {
  for (GroupId g : kAllGroups)
    for (const Signature& s : scoped_signatures(g, 10))
      CHECK(classify_group(g, s) == oracle::classify_via_proof_tables(g, s));
}

TEST_CASE("transport maps: frozen even-to-lower example") {
  // SpO_2 Cl(2,0) -> SpO_12 Cl(0,1): u e + v e1e2 goes to u e + v e1.
  Theorem41Map t41 = theorem41_map(GroupId::SpO2, Signature(2, 0), TransportVariant::EvenToLowerP);
  CHECK(t41.dst_group == GroupId::SpO12);
  CHECK(t41.map.dst == Signature(0, 1));
  Multivector u = mv("1/3*1 + 5*e1e2", Signature(2, 0));
  Multivector image = t41.map.apply(u);
  CHECK(image == mv("1/3*1 + 5*e1", Signature(0, 1), Field::Complex).complexified());

  // both squares are -e; reversion on the source matches the twisted
  // involution on the target
  Multivector e12 = mv("e1e2", Signature(2, 0));
  Multivector f1 = t41.map.apply(e12);
  CHECK(f1 * f1 == -Multivector::unit(Signature(0, 1), Field::Complex));
  CHECK(t41.map.apply(e12.reversed()) == f1.reversed().grade_involution());

  // odd input violates the carrier
  CHECK_THROWS_AS(t41.map.apply(mv("e1", Signature(2, 0))), std::invalid_argument);
}

TEST_CASE("transport maps: i-twist realizes the swapped algebra") {
  Signature sig(1, 3);
  Theorem41Map t41 = theorem41_map(GroupId::SpO2i1, sig, TransportVariant::ITwist);
  CHECK(t41.dst_group == GroupId::SpO12);
  CHECK(t41.map.dst == Signature(3, 1));

  TransportMap back = t41.map.inverted();
  Signature dst(3, 1);
  for (int a = 1; a <= 4; ++a) {
    Multivector fa = Multivector::generator(dst, Field::Complex, a);
    Multivector img = back.apply(fa);
    // generator images square to the swapped metric and live in i * grade 1
    CHECK(img * img ==
          CRat(Rational(dst.metric(a))) * Multivector::unit(sig, Field::Complex));
    const auto& [mask, c] = *img.terms().begin();
    CHECK(blade_grade(mask) == 1);
    CHECK(c.re == 0);
  }

  // membership intertwines: an exact source member maps to a target member
  Multivector rotor = exact_rotor(sig, 0b1100).complexified();  // e2e3, square -e
  CHECK(is_member(GroupId::SpO2i1, rotor));
  CHECK(is_member(GroupId::SpO12, t41.map.apply(rotor)));
  Multivector ie1 = mv("i*e1", sig, Field::Complex);
  CHECK(is_member(GroupId::SpO2i1, ie1));
  CHECK(is_member(GroupId::SpO12, t41.map.apply(ie1)));

  // multiplicative on the carrier
  Multivector prod = rotor * ie1;
  CHECK(t41.map.apply(prod) == t41.map.apply(rotor) * t41.map.apply(ie1));
}

TEST_CASE("transport maps: swap variant round trip") {
  Signature sig(2, 1);
  Theorem41Map swap = theorem41_map(GroupId::SpO2, sig, TransportVariant::Swap);
  CHECK(swap.map.dst == Signature(1, 2));
  Multivector u = exact_rotor(sig, 0b011);
  Multivector v = swap.map.apply(u);
  CHECK(is_member(GroupId::SpO2, v));  // carrier checks are value-based
  CHECK(swap.map.inverted().apply(v) == u.complexified());
}

TEST_CASE("transport maps: inadmissible variants") {
  CHECK_THROWS_AS(theorem41_map(GroupId::SpO23, Signature(1, 1), TransportVariant::ITwist),
                  std::invalid_argument);
  CHECK_THROWS_AS(theorem41_map(GroupId::SpO2, Signature(2, 0), TransportVariant::EvenToLowerQ),
                  std::invalid_argument);
  CHECK_THROWS_AS(theorem41_map(GroupId::SpO2i1, Signature(1, 3), TransportVariant::Swap),
                  std::invalid_argument);
}

TEST_CASE("spin membership") {
  Signature s20(2, 0);
  CHECK_FALSE(spin_member(mv("e1", s20)));  // odd
  CHECK(spin_member(mv("e1e2", s20)));
  CHECK(spin_member(exact_rotor(s20, 0b11)));
  CHECK(spin_member(Multivector::unit(s20, Field::Real)));

  // 2 e is even with grade-1-preserving conjugation but fails U~U = e
  CHECK_FALSE(spin_member(mv("2*1", s20)));

  // float flavour
  MultivectorF uf = to_float(exact_rotor(s20, 0b11));
  CHECK(spin_residual(uf) < 1e-15);
  CHECK_THROWS_AS(spin_residual(to_float(mv("e1", s20))), std::invalid_argument);
}

TEST_CASE("spin members pass every applicable group membership") {
  SplitMix64 rng(73);
  for (int n = 2; n <= 5; ++n)
    for (int p : {0, (n + 1) / 2, n}) {
      Signature sig(p, n - p);
      std::vector<std::uint32_t> grade2;
      for (std::uint32_t mask = 0; mask < (1u << n); ++mask)
        if (blade_grade(mask) == 2) grade2.push_back(mask);
      for (int t = 0; t < 4; ++t) {
        Multivector u = exact_rotor(sig, grade2[rng.next() % grade2.size()]) *
                        exact_rotor(sig, grade2[rng.next() % grade2.size()]);
        REQUIRE(spin_member(u));
        CHECK(is_member(GroupId::SpO23, u));
        CHECK(is_member(GroupId::SpO12, u));
        CHECK(is_member(GroupId::SpO2, u));
        CHECK(is_member(GroupId::SpO2i1, u.complexified()));
        CHECK(is_member(GroupId::SpO2i3, u.complexified()));
      }
    }
}

TEST_CASE("grade-2 space equals the type-2 space for n <= 5") {
  for (int n = 1; n <= 5; ++n)
    for (int p = 0; p <= n; ++p) {
      Signature sig(p, n - p);
      SplitMix64 rng(60 + n);
      for (int t = 0; t < 4; ++t) {
        Multivector u = oracle::random_multivector(rng, sig, Field::Real, 6);
        if (n >= 2)
          CHECK(u.grade_part(2) == u.type_part(QuaternionType::T2));
        else
          CHECK(u.type_part(QuaternionType::T2).is_zero());
      }
    }
}

TEST_CASE("sample_group_element: scale zero gives the identity") {
  MultivectorF u = sample_group_element(GroupId::SpO23, Signature(1, 1), 5, 0.0);
  CHECK(max_abs_coeff(u - MultivectorF::unit(Signature(1, 1), Field::Complex)) < 1e-14);
}

TEST_CASE("sample_group_element: closed form for a single basis element") {
  // Out-of-classification-scope signature: the series route.
  Signature s20(2, 0);
  std::uint64_t seed = 99;
  MultivectorF u = sample_group_element(GroupId::SpO2, s20, seed, 0.75);
  SplitMix64 rng(seed);
  double theta = rng.symmetric(0.75);
  CHECK(std::abs(u.coeff(0).real() - std::cos(theta)) < 1e-12);
  CHECK(std::abs(u.coeff(0b11).real() - std::sin(theta)) < 1e-12);
  CHECK(membership_residual(GroupId::SpO2, u) < 1e-12);

  // In-scope signature: the representation route matches the same closed form.
  Signature s11(1, 1);
  MultivectorF v = sample_group_element(GroupId::SpO2, s11, seed, 0.75);
  SplitMix64 rng2(seed);
  double phi = rng2.symmetric(0.75);  // e1e2 squares to +e: hyperbolic rotor
  CHECK(std::abs(v.coeff(0).real() - std::cosh(phi)) < 1e-12);
  CHECK(std::abs(v.coeff(0b11).real() - std::sinh(phi)) < 1e-12);
}

TEST_CASE("sample_group_element: seeded samples satisfy the defining equation") {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    MultivectorF u = sample_group_element(GroupId::SpO2i1, Signature(1, 3), seed, 1.0);
    CHECK(membership_residual(GroupId::SpO2i1, u) < 1e-9);
  }
}

TEST_CASE("witness: the introductory special case Sp(2,R) at (1,3)") {
  CellReport report = isomorphism_witness(GroupId::SpO2i1, Signature(1, 3), 100, 42, 1e-9);
  CHECK(report.pass);
  CHECK(report.descriptor == ClassicalGroupDescriptor{GroupFamily::Sp, 2, 1});
  CHECK(report.lie_dim == 10);
  const CheckResult* rel = find_check(report, "classical_relation");
  REQUIRE(rel != nullptr);
  CHECK(rel->residual < 1e-9);
  CHECK(find_check(report, "transport_descriptor") != nullptr);
  CHECK(find_check(report, "membership")->pass);
}

TEST_CASE("witness: orthogonal, split, symplectic and linear cells") {
  // O(2) at (2,0)
  CellReport o2 = isomorphism_witness(GroupId::SpO23, Signature(2, 0), 50, 7, 1e-9);
  CHECK(o2.pass);
  CHECK(o2.descriptor.family == GroupFamily::O);

  // O(1,1) at (1,1)
  CellReport o11 = isomorphism_witness(GroupId::SpO23, Signature(1, 1), 50, 7, 1e-9);
  CHECK(o11.pass);
  CHECK(o11.descriptor.family == GroupFamily::SplitO);

  // GL(2,R) at (2,1) with the block split and invertibility
  CellReport gl = isomorphism_witness(GroupId::SpO23, Signature(2, 1), 50, 7, 1e-9);
  CHECK(gl.pass);
  CHECK(gl.descriptor == ClassicalGroupDescriptor{GroupFamily::GL, 2, 1});
  CHECK(find_check(gl, "gl_invertibility") != nullptr);
  CHECK(find_check(gl, "block_structure")->pass);

  // Sp(1,R) + Sp(1,R) at (2,1) for the twisted group
  CellReport sp2 = isomorphism_witness(GroupId::SpO12, Signature(2, 1), 50, 7, 1e-9);
  CHECK(sp2.pass);
  CHECK(sp2.descriptor == ClassicalGroupDescriptor{GroupFamily::Sp, 1, 2});

  // definite odd (n,0) with two orthogonal blocks
  CellReport opair = isomorphism_witness(GroupId::SpO23, Signature(1, 0), 20, 7, 1e-9);
  CHECK(opair.pass);
  CHECK(opair.descriptor.multiplicity == 2);

  // even group through its transport
  CellReport spo2 = isomorphism_witness(GroupId::SpO2, Signature(2, 2), 50, 7, 1e-9);
  CHECK(spo2.pass);
  CHECK(spo2.descriptor == ClassicalGroupDescriptor{GroupFamily::Sp, 1, 2});

  // hermitian cross-check appears for p - q = 0 (mod 8) complex carriers
  CellReport cross = isomorphism_witness(GroupId::SpO2i1, Signature(2, 2), 30, 7, 1e-9);
  CHECK(cross.pass);
  CHECK(find_check(cross, "hermitian_cross") != nullptr);
  CHECK(find_check(cross, "hermitian_cross")->pass);
}

TEST_CASE("witness passes on every in-scope cell, n <= 8") {
  for (GroupId g : kAllGroups)
    for (const Signature& s : scoped_signatures(g, 8)) {
      CellReport report = isomorphism_witness(g, s, 4, 11, 1e-9);
      CHECK(report.pass);
      if (!report.pass) {
        for (const CheckResult& c : report.checks)
          if (!c.pass)
            MESSAGE(group_token(g), " ", s.str(), " failed ", c.name, " residual ", c.residual);
      }
    }
}

TEST_CASE("witness rejects invalid requests") {
  CHECK_THROWS_AS(isomorphism_witness(GroupId::SpO23, Signature(0, 1), 10, 1, 1e-9),
                  OutOfScopeError);
  CHECK_THROWS_AS(isomorphism_witness(GroupId::SpO23, Signature(1, 1), 0, 1, 1e-9),
                  std::invalid_argument);
  CHECK_THROWS_AS(isomorphism_witness(GroupId::SpO23, Signature(1, 1), 10, 1, 0.0),
                  std::invalid_argument);
}
