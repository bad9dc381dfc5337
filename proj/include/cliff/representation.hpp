#pragma once

#include <optional>
#include <string>
#include <vector>

#include "cliff/diagonalize.hpp"
#include "cliff/matrix.hpp"
#include "cliff/multivector.hpp"

namespace cliff {

// Signals a signature outside the real-representation (or group) scope.
struct OutOfScopeError : std::domain_error {
  using std::domain_error::domain_error;
};

enum class BlockStructure { Irreducible, TwoBlock };
enum class Side { P, Q };

struct NormalForm {
  Side side;
  CanonicalForm form;
};

// Faithful real matrix representation of Cl(p,q): one generator matrix per
// e^a, entries in Q(sqrt 2).  The Clifford relations are verified after every
// construction move, never assumed.
struct Representation {
  Signature sig;
  int dim = 0;
  BlockStructure blocks = BlockStructure::Irreducible;
  std::vector<Mat<QR2>> gammas;
  std::optional<NormalForm> normal_form;
  std::vector<std::string> build_log;
};

bool rep_in_scope(Signature sig);  // p - q = 0, 1, 2 (mod 8)

enum class BaseCase { Cl00, Cl10 };
Representation base_rep(BaseCase which);

// The four construction moves.  Each verifies the output relations and
// throws std::logic_error if a convention bug ever produced a bad matrix.
Representation extend_pq(const Representation& rep);        // Cl(p,q)   -> Cl(p+1,q+1)
Representation rotate_signature(const Representation& rep); // Cl(p,q)   -> Cl(q+1,p-1)
Representation shift_four(const Representation& rep);       // Cl(p,q)   -> Cl(p-4,q+4)

Representation build_representation(Signature sig);

void verify_clifford_relations(const Representation& rep);  // throws on failure

// Theorem-style normal form of the side product gamma^{1..p} / gamma^{p+1..n}
// for the given signature, if that case exists.
std::optional<CanonicalForm> theorem31_case(Signature sig, Side side);

// Conjugates every generator by the exact orthogonal transform that brings
// the chosen side product to its canonical form (blockwise for odd n).
Representation normalize_rep(const Representation& rep, Side side);

// Matrix of a multivector: the algebra homomorphism extension of the
// generator assignment.
Mat<CQR2> represent(const Multivector& u, const Representation& rep);
Mat<QR2> represent_real(const Multivector& u, const Representation& rep);

// Floating views, used when sampling group elements.
struct BladeMatrixTable {
  explicit BladeMatrixTable(const Representation& rep);

  const Representation* rep;
  std::vector<Mat<double>> mats;  // indexed by blade mask
  std::vector<int> self_sign;     // blade * blade = self_sign * e

  Mat<double> represent_real(const MultivectorF& u) const;
  Mat<std::complex<double>> represent(const MultivectorF& u) const;
  MultivectorF reconstruct(const Mat<double>& m) const;
  MultivectorF reconstruct(const Mat<std::complex<double>>& m) const;
};

// Exact trace-pairing reconstruction (possible by faithfulness).
Multivector reconstruct_exact(const Mat<CQR2>& m, const Representation& rep);

// Transpose identities: checks, for every basis blade, the applicable
// conjugation formulas that express the matrix transpose inside the algebra.
struct TransposeIdentityReport {
  struct Line {
    std::string name;
    bool pass = false;
  };
  std::vector<Line> lines;
  bool all_pass = false;
  int blades_checked = 0;
};
TransposeIdentityReport check_transpose_identities(const Representation& rep);

// Exact rank of the 2^n represented basis blades, flattened to row vectors.
int representation_rank(const Representation& rep);

std::string rep_dump(const Representation& rep);  // CLI text format

}  // namespace cliff
