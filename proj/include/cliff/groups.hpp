#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "cliff/multivector.hpp"
#include "cliff/representation.hpp"

namespace cliff {

// The five involution-defined subgroups, in their customary listing order.
enum class GroupId { SpO2i1, SpO2i3, SpO23, SpO12, SpO2 };

constexpr GroupId kAllGroups[] = {GroupId::SpO2i1, GroupId::SpO2i3, GroupId::SpO23,
                                  GroupId::SpO12, GroupId::SpO2};

std::string group_token(GroupId g);                    // "spo2i1", ...
std::optional<GroupId> group_from_token(std::string_view token);
std::string group_display(GroupId g);                  // "SpO_2i1", ...

enum class GroupFamily { O, SplitO, Sp, GL };

struct ClassicalGroupDescriptor {
  GroupFamily family = GroupFamily::O;
  long long m = 1;       // O(m), O(m,m), Sp(m,R) or GL(m,R)
  int multiplicity = 1;  // 2 encodes a direct sum of two identical factors

  long long matrix_size() const {
    switch (family) {
      case GroupFamily::O: return m;
      case GroupFamily::GL: return m;
      default: return 2 * m;
    }
  }
  long long algebra_dim_single() const {
    switch (family) {
      case GroupFamily::O: return m * (m - 1) / 2;
      case GroupFamily::SplitO: return m * (2 * m - 1);
      case GroupFamily::Sp: return m * (2 * m + 1);
      case GroupFamily::GL: return m * m;
    }
    return 0;
  }
  long long algebra_dim() const { return multiplicity * algebra_dim_single(); }

  std::string family_token() const;  // "O", "Omm", "Sp", "GL"
  std::string group_name() const;    // e.g. "O(4,4)" or "Sp(1,R) (+) Sp(1,R)"
  std::string algebra_name() const;  // e.g. "o(4,4)"

  friend bool operator==(const ClassicalGroupDescriptor&,
                         const ClassicalGroupDescriptor&) = default;
};

// Signature scope of each group's classification.
bool group_in_scope(GroupId g, Signature sig);
std::string group_scope_rule(GroupId g);

// Which involution formula defines membership for the two groups carried on
// the even (+) i*odd space: the pseudo-hermitian reading of the definitions,
// or the hermitian-conjugate variant.
enum class ConjugationReading { PseudoHermitian, Hermitian };

// Exact membership test; throws std::invalid_argument when the multivector
// is outside the group's carrier space.
bool is_member(GroupId g, const Multivector& u,
               ConjugationReading reading = ConjugationReading::PseudoHermitian);

// Floating membership residual: max-abs coefficient of U^s U - e.
double membership_residual(GroupId g, const MultivectorF& u,
                           ConjugationReading reading = ConjugationReading::PseudoHermitian);

// Does the multivector lie in the group's Lie algebra subspace?
bool algebra_contains(GroupId g, const Multivector& x);

struct LieAlgebraSpace {
  GroupId group;
  Signature sig;
  std::vector<Multivector> basis;  // blades, possibly i-multiplied
  int dim = 0;
};

// Blade basis of the defining grade-mod-4 classes; asserts commutator closure
// on the result.
LieAlgebraSpace algebra_basis(GroupId g, Signature sig);

long long algebra_dim_count(GroupId g, Signature sig);  // binomial count, no basis

// Classification against the classical groups (throws OutOfScopeError).
ClassicalGroupDescriptor classify_group(GroupId g, Signature sig);
ClassicalGroupDescriptor classify_algebra(GroupId g, Signature sig);

// Structure-preserving maps between group carriers.  Every map substitutes a
// signed (possibly i-multiplied) blade for each basis blade, so it is exactly
// invertible where defined.
struct TransportMap {
  struct Entry {
    bool defined = false;
    std::uint32_t mask = 0;
    int re = 0, im = 0;  // unit coefficient, one of +-1, +-i
  };
  Signature src;
  Signature dst;
  std::vector<Entry> table;  // indexed by source blade mask

  Multivector apply(const Multivector& u) const;
  MultivectorF apply(const MultivectorF& u) const;
  TransportMap inverted() const;
  static TransportMap composed(const TransportMap& first, const TransportMap& then);
};

enum class TransportVariant { ITwist, EvenToLowerQ, EvenToLowerP, Swap };

struct Theorem41Map {
  GroupId src_group;
  GroupId dst_group;
  TransportMap map;
};

Theorem41Map theorem41_map(GroupId g, Signature sig, TransportVariant variant);

// Spin group membership: even, U~U = e, and conjugation preserves grade 1.
bool spin_member(const Multivector& u);
double spin_residual(const MultivectorF& u);

MultivectorF sample_group_element(GroupId g, Signature sig, std::uint64_t seed, double scale);

struct CheckResult {
  std::string name;
  double residual = 0.0;
  bool pass = false;
};

struct CellReport {
  GroupId group;
  Signature sig;
  ClassicalGroupDescriptor descriptor;
  long long lie_dim = 0;
  std::vector<CheckResult> checks;
  bool pass = false;
};

// Builds the normalized representation (after transporting the two complex
// carriers and the even group into real scope), samples group elements, and
// checks the defining relation of the classified classical group.
CellReport isomorphism_witness(GroupId g, Signature sig, int samples, std::uint64_t seed,
                               double tol);

}  // namespace cliff
