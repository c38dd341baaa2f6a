#include "pinchlab/transform.hpp"

#include <algorithm>

#include "pinchlab/dense.hpp"

namespace pinchlab {

TransferResult transfer_crossing_change(const Diagram& d, const WSolution& s,
                                        const std::set<int>& J) {
  if (static_cast<int>(s.w.size()) != d.region_count()) {
    throw precondition_error("solution length does not match the diagram");
  }
  for (int k : J) {
    if (k < 1 || k > d.crossing_count()) {
      throw precondition_error("crossing id " + std::to_string(k) +
                               " out of range");
    }
    if (!is_pinched(d, s.w, k)) {
      throw precondition_error("crossing " + std::to_string(k) +
                               " is not pinched; transfer undefined");
    }
  }
  const double tol = std::max(s.tol, 1e-10);
  if (!is_solution(d, s.w, tol)) {
    throw precondition_error("value vector does not solve the source diagram");
  }
  Diagram dj = change_crossings(d, J);
  // same projection, same region ids: the values transfer verbatim
  if (!is_solution(dj, s.w, tol)) {
    throw verification_error("transferred values fail on the changed diagram");
  }
  WSolution out = make_solution(dj, s.w, s.tol);
  return {std::move(dj), std::move(out)};
}

TangleResult insert_tangle(const Diagram& d, const WSolution& s,
                           int crossing_id, const std::vector<int>& word) {
  if (static_cast<int>(s.w.size()) != d.region_count()) {
    throw precondition_error("solution length does not match the diagram");
  }
  if (crossing_id < 1 || crossing_id > d.crossing_count()) {
    throw precondition_error("crossing id out of range");
  }
  if (!is_pinched(d, s.w, crossing_id)) {
    throw precondition_error("crossing " + std::to_string(crossing_id) +
                             " is not pinched; twist insertion undefined");
  }
  const double tol = std::max(s.tol, 1e-10);
  if (!is_solution(d, s.w, tol)) {
    throw precondition_error("value vector does not solve the source diagram");
  }

  TangleInsertion ti = insert_tangle_detail(d, crossing_id, word);
  Diagram nd(ti.tuples);

  // carry the old values bit for bit, then let the pinch conditions at the
  // twist crossings determine the new interior region values
  std::vector<cplx> wn(nd.region_count(), cplx(0.0, 0.0));
  std::vector<bool> known(nd.region_count(), false);
  for (const auto& [old_id, new_id] : ti.region_map) {
    wn[new_id - 1] = s.w[old_id - 1];
    known[new_id - 1] = true;
  }
  std::vector<int> unknown;
  for (int id = 1; id <= nd.region_count(); ++id) {
    if (!known[id - 1]) unknown.push_back(id);
  }
  std::vector<int> col_of(nd.region_count() + 1, -1);
  for (std::size_t t = 0; t < unknown.size(); ++t) {
    col_of[unknown[t]] = static_cast<int>(t);
  }
  const int m = static_cast<int>(ti.tangle_crossings.size());
  const int n = static_cast<int>(unknown.size());
  std::vector<cplx> a(m * n, cplx(0.0, 0.0)), b(m, cplx(0.0, 0.0));
  for (int row = 0; row < m; ++row) {
    const int k = ti.tangle_crossings[row];
    for (int q = 0; q < 4; ++q) {
      const double sgn = (q % 2 == 0) ? 1.0 : -1.0;
      const int rid = nd.region_at(k, q);
      if (col_of[rid] >= 0) {
        a[row * n + col_of[rid]] += sgn;
      } else {
        b[row] -= sgn * wn[rid - 1];
      }
    }
  }
  const detail::lstsq_result ls = detail::lstsq(a, b, m, n);
  if (!ls.full_rank) {
    throw verification_error("twist pinch system is underdetermined");
  }
  if (ls.residual > 1e-9) {
    throw verification_error("twist pinch system is inconsistent");
  }
  for (int t = 0; t < n; ++t) wn[unknown[t] - 1] = ls.x[t];

  if (!is_solution(nd, wn, tol)) {
    throw verification_error("twist insertion broke the solution");
  }
  for (int k : ti.tangle_crossings) {
    if (!is_pinched(nd, wn, k)) {
      throw verification_error("twist crossing " + std::to_string(k) +
                               " failed to pinch");
    }
  }
  WSolution out = make_solution(nd, std::move(wn), s.tol);
  return {std::move(nd), std::move(out), std::move(ti.tangle_crossings),
          std::move(ti.region_map)};
}

bool r_related(const Diagram& d1, const Diagram& d2, const WSolution& s) {
  if (d1.crossing_count() != d2.crossing_count()) {
    throw precondition_error("diagrams have different crossing counts");
  }
  // recover the set of switched crossings and check the projections agree
  std::set<int> J;
  for (int k = 1; k <= d1.crossing_count(); ++k) {
    const auto& t1 = d1.crossing(k).arcs;
    const auto& t2 = d2.crossing(k).arcs;
    if (t1 == t2) continue;
    const std::array<int, 4> switched =
        d1.crossing(k).sign > 0
            ? std::array<int, 4>{t1[3], t1[0], t1[1], t1[2]}
            : std::array<int, 4>{t1[1], t1[2], t1[3], t1[0]};
    if (t2 != switched) {
      throw precondition_error("diagrams do not share a projection");
    }
    J.insert(k);
  }
  const double tol = std::max(s.tol, 1e-10);
  if (!is_solution(d1, s.w, tol)) return false;
  for (int k : J) {
    if (!is_pinched(d1, s.w, k)) return false;
  }
  // rebuild the change with region ids aligned to d1 before re-checking
  const Diagram dj = change_crossings(d1, J);
  return is_solution(dj, s.w, tol);
}

}  // namespace pinchlab
