#pragma once

// Independent classification route used by tests and the acceptance suite.
//
// The library's classify_group reads the n-mod-8 case tables.  This oracle
// instead follows the proof route: the (p mod 4, q mod 4) signature tables
// stated for the two real-carrier groups, reduced to via the group
// isomorphisms SpO_2i1(p,q) ~ SpO_12(q,p), SpO_2i3(p,q) ~ SpO_23(q,p) and
// SpO_2(p,q) ~ SpO_12(p,q-1) / SpO_12(q,p-1).  Both routes must agree on
// every in-scope cell.

#include <stdexcept>

#include "cliff/groups.hpp"

namespace oracle {

using cliff::ClassicalGroupDescriptor;
using cliff::GroupFamily;
using cliff::GroupId;
using cliff::Signature;

namespace detail {

inline long long p2(int e) {
  if (e < 0) throw std::logic_error("classify oracle: negative exponent");
  return 1ll << e;
}

enum class RowKind { Omm, OmmPair, Sp, SpPair, GL };

inline ClassicalGroupDescriptor row_descriptor(RowKind kind, int n) {
  switch (kind) {
    case RowKind::Omm: return {GroupFamily::SplitO, p2(n / 2 - 1), 1};
    case RowKind::OmmPair: return {GroupFamily::SplitO, p2((n - 1) / 2 - 1), 2};
    case RowKind::Sp: return {GroupFamily::Sp, p2(n / 2 - 1), 1};
    case RowKind::SpPair: return {GroupFamily::Sp, p2((n - 1) / 2 - 1), 2};
    case RowKind::GL: return {GroupFamily::GL, p2((n - 1) / 2), 1};
  }
  throw std::logic_error("classify oracle: bad row");
}

// Proof table for the reversion group, keyed by (p mod 4, q mod 4).
inline ClassicalGroupDescriptor spo23_proof(Signature s) {
  int n = s.n();
  if (s.q == 0)
    return n % 2 == 0 ? ClassicalGroupDescriptor{GroupFamily::O, p2(n / 2), 1}
                      : ClassicalGroupDescriptor{GroupFamily::O, p2((n - 1) / 2), 2};
  int pm = s.p % 4, qm = s.q % 4;
  auto is = [&](int a, int b) { return pm == a && qm == b; };
  if (is(0, 0) || is(2, 0) || is(1, 1) || is(1, 3)) return row_descriptor(RowKind::Omm, n);
  if (is(1, 0)) return row_descriptor(RowKind::OmmPair, n);
  if (is(3, 1) || is(3, 3) || is(0, 2) || is(2, 2)) return row_descriptor(RowKind::Sp, n);
  if (is(3, 2)) return row_descriptor(RowKind::SpPair, n);
  if (is(2, 1) || is(0, 3)) return row_descriptor(RowKind::GL, n);
  throw std::logic_error("classify oracle: signature class not in the proof table");
}

// Proof table for the reversion-involution group.
inline ClassicalGroupDescriptor spo12_proof(Signature s) {
  int n = s.n();
  if (s.p == 0)
    return n % 2 == 0 ? ClassicalGroupDescriptor{GroupFamily::O, p2(n / 2), 1}
                      : ClassicalGroupDescriptor{GroupFamily::O, p2((n - 1) / 2), 2};
  int pm = s.p % 4, qm = s.q % 4;
  auto is = [&](int a, int b) { return pm == a && qm == b; };
  if (is(0, 0) || is(0, 2) || is(1, 3) || is(3, 3)) return row_descriptor(RowKind::Omm, n);
  if (is(0, 3)) return row_descriptor(RowKind::OmmPair, n);
  if (is(1, 1) || is(3, 1) || is(2, 0) || is(2, 2)) return row_descriptor(RowKind::Sp, n);
  if (is(2, 1)) return row_descriptor(RowKind::SpPair, n);
  if (is(1, 0) || is(3, 2)) return row_descriptor(RowKind::GL, n);
  throw std::logic_error("classify oracle: signature class not in the proof table");
}

}  // namespace detail

inline ClassicalGroupDescriptor classify_via_proof_tables(GroupId g, Signature sig) {
  if (!cliff::group_in_scope(g, sig))
    throw cliff::OutOfScopeError("classify oracle: out of scope");
  switch (g) {
    case GroupId::SpO23: return detail::spo23_proof(sig);
    case GroupId::SpO12: return detail::spo12_proof(sig);
    case GroupId::SpO2i1: return detail::spo12_proof(Signature(sig.q, sig.p));
    case GroupId::SpO2i3: return detail::spo23_proof(Signature(sig.q, sig.p));
    case GroupId::SpO2:
      return sig.q >= 1 ? detail::spo12_proof(Signature(sig.p, sig.q - 1))
                        : detail::spo12_proof(Signature(0, sig.p - 1));
  }
  throw std::logic_error("classify oracle: bad group");
}

}  // namespace oracle
