#include "cliff/representation.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace cliff {

namespace {

int mod8(int v) { return ((v % 8) + 8) % 8; }

Mat<QR2> doubled(const Mat<QR2>& m, int sign_second) {
  return Mat<QR2>::block_diag(m, QR2(sign_second) * m);
}

void append_log(Representation& rep, std::string line) {
  rep.build_log.push_back(std::move(line));
}

// Stable reindex: generators squaring to +1 first, original order preserved
// inside each class.
struct NewGen {
  Mat<QR2> mat;
  int square;  // +1 or -1
};

Representation assemble(Signature sig, int dim, std::vector<NewGen> gens,
                        std::vector<std::string> log) {
  std::stable_sort(gens.begin(), gens.end(),
                   [](const NewGen& a, const NewGen& b) { return a.square > b.square; });
  int plus = 0;
  for (const NewGen& g : gens)
    if (g.square > 0) ++plus;
  if (plus != sig.p || int(gens.size()) != sig.n())
    throw std::logic_error("representation assembly: signature bookkeeping failed");
  Representation rep{sig, dim, mod8(sig.p - sig.q) == 1 ? BlockStructure::TwoBlock
                                                        : BlockStructure::Irreducible};
  rep.build_log = std::move(log);
  rep.gammas.reserve(gens.size());
  for (NewGen& g : gens) rep.gammas.push_back(std::move(g.mat));
  verify_clifford_relations(rep);
  return rep;
}

Mat<QR2> gamma_product(const Representation& rep, int first, int last) {  // 1-based inclusive
  Mat<QR2> acc = Mat<QR2>::identity(rep.dim);
  for (int a = first; a <= last; ++a) acc = acc * rep.gammas[a - 1];
  return acc;
}

bool is_sign_flip_pair(const Mat<QR2>& m) {
  if (m.dim() % 2 != 0) return false;
  return m.top_right_block().is_zero() && m.bottom_left_block().is_zero() &&
         m.bottom_right_block() == -m.top_left_block();
}

}  // namespace

bool rep_in_scope(Signature sig) {
  int r = mod8(sig.p - sig.q);
  return r == 0 || r == 1 || r == 2;
}

void verify_clifford_relations(const Representation& rep) {
  const int n = rep.sig.n();
  if (int(rep.gammas.size()) != n)
    throw std::logic_error("representation: generator count mismatch");
  for (const Mat<QR2>& g : rep.gammas)
    if (g.dim() != rep.dim) throw std::logic_error("representation: dimension mismatch");
  for (int a = 1; a <= n; ++a)
    for (int b = a; b <= n; ++b) {
      Mat<QR2> s = rep.gammas[a - 1] * rep.gammas[b - 1] + rep.gammas[b - 1] * rep.gammas[a - 1];
      int eta = a == b ? 2 * rep.sig.metric(a) : 0;
      if (!(s == QR2(eta) * Mat<QR2>::identity(rep.dim))) {
        std::ostringstream os;
        os << "representation: Clifford relation failed for generators " << a << "," << b
           << " of " << rep.sig.str();
        throw std::logic_error(os.str());
      }
    }
}

Representation base_rep(BaseCase which) {
  if (which == BaseCase::Cl00) {
    Representation rep{Signature(0, 0), 1, BlockStructure::Irreducible};
    append_log(rep, "base Cl(0,0)");
    return rep;
  }
  Representation rep{Signature(1, 0), 2, BlockStructure::TwoBlock};
  Mat<QR2> g(2);
  g.at(0, 0) = QR2(1);
  g.at(1, 1) = QR2(-1);
  rep.gammas.push_back(g);
  append_log(rep, "base Cl(1,0)");
  verify_clifford_relations(rep);
  return rep;
}

Representation extend_pq(const Representation& rep) {
  const Signature& s = rep.sig;
  const int n = s.n();
  const Signature out(s.p + 1, s.q + 1);
  std::vector<NewGen> gens;
  gens.reserve(n + 2);
  for (int a = 1; a <= n; ++a)
    gens.push_back({doubled(rep.gammas[a - 1], -1), s.metric(a)});

  std::vector<std::string> log = rep.build_log;
  const bool case2 = mod8(s.p - s.q) % 4 == 1;
  if (!case2) {
    // Off-diagonal pair: symmetric square +1 and antisymmetric square -1.
    Mat<QR2> plus(2 * rep.dim), minus(2 * rep.dim);
    for (int i = 0; i < rep.dim; ++i) {
      plus.at(i, rep.dim + i) = QR2(1);
      plus.at(rep.dim + i, i) = QR2(1);
      minus.at(i, rep.dim + i) = QR2(-1);
      minus.at(rep.dim + i, i) = QR2(1);
    }
    gens.push_back({plus, 1});
    gens.push_back({minus, -1});
    log.push_back("extend_pq -> " + out.str());
  } else {
    // Two-block input: the new pair stays block-diagonal.  The plus generator
    // is the full old-generator product times the Omega-like block, taken in
    // that order; the example convention with the opposite sign differs from
    // this one only by negating both new generators.
    Mat<QR2> star = canonical_matrix(CanonicalForm::Omega, rep.dim);
    Mat<QR2> word = Mat<QR2>::identity(rep.dim);
    for (const Mat<QR2>& g : rep.gammas) word = word * g;
    gens.push_back({doubled(word * star, -1), 1});
    gens.push_back({doubled(star, -1), -1});
    log.push_back("extend_pq -> " + out.str() +
                  " [two-block case, plus generator = old product * omega-block]");
  }
  return assemble(out, 2 * rep.dim, std::move(gens), std::move(log));
}

Representation rotate_signature(const Representation& rep) {
  const Signature& s = rep.sig;
  if (s.p < 1) throw std::invalid_argument("rotate_signature: requires p >= 1");
  const Signature out(s.q + 1, s.p - 1);
  std::vector<NewGen> gens;
  gens.push_back({rep.gammas[0], 1});
  for (int i = 2; i <= s.n(); ++i)
    gens.push_back({rep.gammas[i - 1] * rep.gammas[0], -s.metric(i)});
  std::vector<std::string> log = rep.build_log;
  log.push_back("rotate_signature -> " + out.str());
  Representation result = assemble(out, rep.dim, std::move(gens), std::move(log));

  // For odd n the move leaves the products beta^i beta^1 with two identical
  // blocks of equal sign.  Conjugating the second block by the block of the
  // surviving generator restores diag(x, -x) for every generator: that block
  // commutes with itself and anticommutes with each product generator.
  if (out.n() % 2 == 1 && result.blocks == BlockStructure::TwoBlock) {
    bool aligned = std::all_of(result.gammas.begin(), result.gammas.end(), is_sign_flip_pair);
    if (!aligned) {
      if (!is_sign_flip_pair(result.gammas[0]))
        throw std::logic_error("rotate_signature: unexpected block layout");
      Mat<QR2> m = result.gammas[0].top_left_block();
      Mat<QR2> mi = inverse(m);
      for (Mat<QR2>& g : result.gammas) {
        if (!g.top_right_block().is_zero() || !g.bottom_left_block().is_zero())
          throw std::logic_error("rotate_signature: generator is not block-diagonal");
        g = Mat<QR2>::block_diag(g.top_left_block(), mi * g.bottom_right_block() * m);
        if (!is_sign_flip_pair(g))
          throw std::logic_error("rotate_signature: block realignment failed");
      }
      verify_clifford_relations(result);
      result.build_log.push_back("rotate_signature: second block realigned to diag(x,-x) form");
    }
  }
  return result;
}

Representation shift_four(const Representation& rep) {
  const Signature& s = rep.sig;
  if (s.p < 4) throw std::invalid_argument("shift_four: requires p >= 4");
  const Signature out(s.p - 4, s.q + 4);
  Mat<QR2> word = rep.gammas[0] * rep.gammas[1] * rep.gammas[2] * rep.gammas[3];
  std::vector<NewGen> gens;
  for (int i = 1; i <= 4; ++i) gens.push_back({rep.gammas[i - 1] * word, -1});
  for (int j = 5; j <= s.n(); ++j) gens.push_back({rep.gammas[j - 1], s.metric(j)});
  std::vector<std::string> log = rep.build_log;
  log.push_back("shift_four -> " + out.str());
  return assemble(out, rep.dim, std::move(gens), std::move(log));
}

Representation build_representation(Signature sig) {
  if (!rep_in_scope(sig))
    throw OutOfScopeError("no real matrix representation for " + sig.str() +
                          ": requires p - q = 0, 1 or 2 (mod 8)");
  const int t = sig.p - sig.q;
  const int d = mod8(t) > 2 ? -1 : mod8(t);
  if (t > 2) {
    // One rotation away from a signature with a direct plan.
    Representation inner = build_representation(Signature(sig.q + 1, sig.p - 1));
    return rotate_signature(inner);
  }
  const int m = (d - t) / 8;
  const int r = (sig.n() - d) / 2;
  Representation rep;
  switch (d) {
    case 0:
      rep = base_rep(BaseCase::Cl00);
      break;
    case 1:
      rep = base_rep(BaseCase::Cl10);
      break;
    default:
      rep = rotate_signature(extend_pq(base_rep(BaseCase::Cl00)));
      break;
  }
  for (int i = 0; i < r; ++i) rep = extend_pq(rep);
  for (int i = 0; i < m; ++i) rep = shift_four(rep);
  if (!(rep.sig == sig)) throw std::logic_error("build_representation: planner bug");
  return rep;
}

std::optional<CanonicalForm> theorem31_case(Signature sig, Side side) {
  const int n = sig.n();
  const int count = side == Side::P ? sig.p : sig.q;
  if (count == 0) return std::nullopt;
  if (n % 2 == 0) {
    if (side == Side::P)
      return sig.p % 4 == 2 || sig.p % 4 == 3 ? CanonicalForm::Omega : CanonicalForm::J;
    return sig.q % 4 == 1 || sig.q % 4 == 2 ? CanonicalForm::Omega : CanonicalForm::J;
  }
  if (n < 3 || count % 2 != 0) return std::nullopt;
  return count % 4 == 2 ? CanonicalForm::Omega : CanonicalForm::J;
}

Representation normalize_rep(const Representation& rep, Side side) {
  const Signature& s = rep.sig;
  const int count = side == Side::P ? s.p : s.q;
  if (count == 0)
    throw std::invalid_argument("normalize_rep: chosen side is empty for " + s.str());
  if (!rep_in_scope(s)) throw OutOfScopeError("normalize_rep: " + s.str() + " out of scope");
  auto form = theorem31_case(s, side);
  if (!form)
    throw std::invalid_argument("normalize_rep: no canonical case for this side of " + s.str());

  const int first = side == Side::P ? 1 : s.p + 1;
  const int last = side == Side::P ? s.p : s.n();
  Mat<QR2> n_mat = gamma_product(rep, first, last);

  Representation out = rep;
  if (s.n() % 2 == 0) {
    Mat<QR2> t = involution_diagonalizer(n_mat, *form);
    Mat<QR2> ti = t.transposed();
    for (Mat<QR2>& g : out.gammas) g = ti * g * t;
  } else {
    // Two-block case: every generator must split as diag(x, -x); the side
    // product is then diag(D, D) and each block is normalized by the same T.
    for (const Mat<QR2>& g : rep.gammas)
      if (!is_sign_flip_pair(g))
        throw std::invalid_argument(
            "normalize_rep: generators lack the two-block sign-flip structure");
    Mat<QR2> d_block = n_mat.top_left_block();
    if (!(n_mat.bottom_right_block() == d_block) || !n_mat.top_right_block().is_zero() ||
        !n_mat.bottom_left_block().is_zero())
      throw std::logic_error("normalize_rep: side product is not diag(D, D)");
    Mat<QR2> t0 = involution_diagonalizer(d_block, *form);
    Mat<QR2> t = Mat<QR2>::block_diag(t0, t0);
    Mat<QR2> ti = t.transposed();
    for (Mat<QR2>& g : out.gammas) g = ti * g * t;
    for (std::size_t a = 0; a < out.gammas.size(); ++a)
      if (!is_sign_flip_pair(out.gammas[a]))
        throw std::logic_error("normalize_rep: sign-flip structure lost");
    out.build_log.push_back("normalize: blockwise, every generator keeps diag(x,-x) form");
  }

  // Post-conditions, all exact.
  verify_clifford_relations(out);
  Mat<QR2> side_prod = gamma_product(out, first, last);
  Mat<QR2> want = s.n() % 2 == 0
                      ? canonical_matrix(*form, out.dim)
                      : Mat<QR2>::block_diag(canonical_matrix(*form, out.dim / 2),
                                             canonical_matrix(*form, out.dim / 2));
  if (!(side_prod == want))
    throw std::logic_error("normalize_rep: side product missed the canonical form");
  for (int a = 1; a <= s.n(); ++a)
    if (!(out.gammas[a - 1].transposed() == QR2(s.metric(a)) * out.gammas[a - 1]))
      throw std::logic_error("normalize_rep: transpose law lost");
  out.normal_form = NormalForm{side, *form};
  out.build_log.push_back(std::string("normalize ") + (side == Side::P ? "p" : "q") +
                          "-side -> " + (*form == CanonicalForm::Omega ? "Omega" : "J"));
  return out;
}

namespace {

template <class S, class Conv>
Mat<S> represent_impl(const Multivector& u, const Representation& rep, Conv conv) {
  if (!(u.sig() == rep.sig))
    throw std::invalid_argument("represent: multivector and representation signature mismatch");
  Mat<S> acc(rep.dim);
  for (const auto& [mask, c] : u.terms()) {
    Mat<QR2> bl = Mat<QR2>::identity(rep.dim);
    for (std::uint32_t rest = mask; rest != 0; rest &= rest - 1) {
      int a = std::countr_zero(rest);
      bl = bl * rep.gammas[a];
    }
    for (int i = 0; i < rep.dim; ++i)
      for (int j = 0; j < rep.dim; ++j) {
        if (bl.at(i, j).is_zero()) continue;
        acc.at(i, j) += conv(c, bl.at(i, j));
      }
  }
  return acc;
}

}  // namespace

Mat<CQR2> represent(const Multivector& u, const Representation& rep) {
  return represent_impl<CQR2>(u, rep, [](const CRat& c, const QR2& e) {
    return CQR2(QR2(c.re) * e, QR2(c.im) * e);
  });
}

Mat<QR2> represent_real(const Multivector& u, const Representation& rep) {
  if (!u.is_real()) throw std::invalid_argument("represent_real: multivector has imaginary part");
  return represent_impl<QR2>(u, rep,
                             [](const CRat& c, const QR2& e) { return QR2(c.re) * e; });
}

BladeMatrixTable::BladeMatrixTable(const Representation& r) : rep(&r) {
  const int n = r.sig.n();
  const std::size_t count = std::size_t(1) << n;
  mats.reserve(count);
  self_sign.resize(count);
  std::vector<Mat<QR2>> exact;
  exact.reserve(count);
  for (std::uint32_t mask = 0; mask < count; ++mask) {
    if (mask == 0) {
      exact.push_back(Mat<QR2>::identity(r.dim));
    } else {
      int low = std::countr_zero(mask);
      std::uint32_t rest = mask & (mask - 1);
      exact.push_back(r.gammas[low] * exact[rest]);
    }
    mats.push_back(to_float(exact.back()));
    self_sign[mask] = blade_product(mask, mask, r.sig).sign;
  }
}

Mat<double> BladeMatrixTable::represent_real(const MultivectorF& u) const {
  if (!(u.sig() == rep->sig)) throw std::invalid_argument("represent: signature mismatch");
  Mat<double> acc(rep->dim);
  for (const auto& [mask, c] : u.terms()) {
    if (c.imag() != 0.0)
      throw std::invalid_argument("represent_real: multivector has imaginary part");
    for (int i = 0; i < rep->dim; ++i)
      for (int j = 0; j < rep->dim; ++j) acc.at(i, j) += c.real() * mats[mask].at(i, j);
  }
  return acc;
}

Mat<std::complex<double>> BladeMatrixTable::represent(const MultivectorF& u) const {
  if (!(u.sig() == rep->sig)) throw std::invalid_argument("represent: signature mismatch");
  Mat<std::complex<double>> acc(rep->dim);
  for (const auto& [mask, c] : u.terms())
    for (int i = 0; i < rep->dim; ++i)
      for (int j = 0; j < rep->dim; ++j) acc.at(i, j) += c * mats[mask].at(i, j);
  return acc;
}

namespace {

template <class S>
MultivectorF reconstruct_impl(const BladeMatrixTable& table, const Mat<S>& m) {
  const Representation& rep = *table.rep;
  if (m.dim() != rep.dim) throw std::invalid_argument("reconstruct: dimension mismatch");
  MultivectorF u(rep.sig, Field::Complex);
  const std::size_t count = std::size_t(1) << rep.sig.n();
  for (std::uint32_t mask = 0; mask < count; ++mask) {
    // coeff = sign * tr(blade * M) / dim, using blade^{-1} = sign * blade.
    S tr{};
    for (int i = 0; i < rep.dim; ++i)
      for (int k = 0; k < rep.dim; ++k) {
        double b = table.mats[mask].at(i, k);
        if (b != 0.0) tr += b * m.at(k, i);
      }
    u.add_term(mask, std::complex<double>(tr) * (double(table.self_sign[mask]) / rep.dim));
  }
  return u;
}

}  // namespace

MultivectorF BladeMatrixTable::reconstruct(const Mat<double>& m) const {
  return reconstruct_impl(*this, m);
}
MultivectorF BladeMatrixTable::reconstruct(const Mat<std::complex<double>>& m) const {
  return reconstruct_impl(*this, m);
}

Multivector reconstruct_exact(const Mat<CQR2>& m, const Representation& rep) {
  if (m.dim() != rep.dim) throw std::invalid_argument("reconstruct: dimension mismatch");
  Multivector u(rep.sig, Field::Complex);
  const std::size_t count = std::size_t(1) << rep.sig.n();
  std::vector<Mat<QR2>> exact;
  exact.reserve(count);
  for (std::uint32_t mask = 0; mask < count; ++mask) {
    if (mask == 0) {
      exact.push_back(Mat<QR2>::identity(rep.dim));
    } else {
      int low = std::countr_zero(mask);
      exact.push_back(rep.gammas[low] * exact[mask & (mask - 1)]);
    }
    int sign = blade_product(mask, mask, rep.sig).sign;
    CQR2 tr{};
    for (int i = 0; i < rep.dim; ++i)
      for (int k = 0; k < rep.dim; ++k) {
        const QR2& b = exact.back().at(i, k);
        if (!b.is_zero()) tr += CQR2(b) * m.at(k, i);
      }
    tr = CQR2(QR2(Rational(sign, rep.dim))) * tr;
    if (!tr.re.is_rational() || !tr.im.is_rational())
      throw std::domain_error("reconstruct_exact: matrix is not in the represented algebra");
    u.add_term(mask, CRat(tr.re.a, tr.im.a));
  }
  return u;
}

TransposeIdentityReport check_transpose_identities(const Representation& rep) {
  const Signature s = rep.sig;
  TransposeIdentityReport report;
  report.all_pass = true;

  auto conjugated_reversion = [&](const Multivector& u, Side side) {
    bool twist = side == Side::P ? s.p % 2 == 0 : s.q % 2 == 1;
    int count = side == Side::P ? s.p : s.q;
    std::uint32_t mask = side == Side::P
                             ? (count ? (std::uint32_t(1) << s.p) - 1 : 0)
                             : (((std::uint32_t(1) << s.n()) - 1) ^ ((std::uint32_t(1) << s.p) - 1));
    Multivector core = u.reversed();
    if (twist) core = core.grade_involution();
    if (mask == 0) return core;
    Multivector side_blade = Multivector::blade(s, Field::Real, mask, CRat(Rational(1)));
    int self = blade_product(mask, mask, s).sign;
    Multivector side_inv = Multivector::blade(s, Field::Real, mask, CRat(Rational(self)));
    return side_inv * core * side_blade;
  };

  auto run_line = [&](const std::string& name, Side side) {
    bool pass = true;
    for (std::uint32_t mask = 0; mask < (std::uint32_t(1) << s.n()); ++mask) {
      Multivector u = Multivector::blade(s, Field::Real, mask, CRat(Rational(1)));
      Mat<QR2> lhs = represent_real(u, rep).transposed();
      Mat<QR2> rhs = represent_real(conjugated_reversion(u, side), rep);
      if (!(lhs == rhs)) {
        pass = false;
        break;
      }
    }
    report.lines.push_back({name, pass});
    report.all_pass = report.all_pass && pass;
  };

  run_line(s.p % 2 == 1 ? "p-odd" : "p-even", Side::P);
  run_line(s.q % 2 == 0 ? "q-even" : "q-odd", Side::Q);
  report.blades_checked = 1 << s.n();
  return report;
}

int representation_rank(const Representation& rep) {
  const std::size_t count = std::size_t(1) << rep.sig.n();
  std::vector<std::vector<QR2>> rows;
  rows.reserve(count);
  std::vector<Mat<QR2>> exact;
  exact.reserve(count);
  for (std::uint32_t mask = 0; mask < count; ++mask) {
    if (mask == 0) {
      exact.push_back(Mat<QR2>::identity(rep.dim));
    } else {
      int low = std::countr_zero(mask);
      exact.push_back(rep.gammas[low] * exact[mask & (mask - 1)]);
    }
    std::vector<QR2> row;
    row.reserve(std::size_t(rep.dim) * rep.dim);
    for (int i = 0; i < rep.dim; ++i)
      for (int j = 0; j < rep.dim; ++j) row.push_back(exact.back().at(i, j));
    rows.push_back(std::move(row));
  }
  return rank_of_rows(std::move(rows));
}

std::string rep_dump(const Representation& rep) {
  std::ostringstream os;
  os << rep.sig.p << " " << rep.sig.q << " " << rep.dim << " "
     << (rep.blocks == BlockStructure::TwoBlock ? 2 : 1) << "\n";
  for (int a = 1; a <= rep.sig.n(); ++a) {
    os << "gamma " << a << "\n";
    os << to_text(rep.gammas[a - 1]);
  }
  return os.str();
}

}  // namespace cliff
