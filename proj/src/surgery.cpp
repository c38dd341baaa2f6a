// Diagram surgeries: connected sum, finger moves across a region, and
// rational twist insertion. All three build an intermediate crossing list
// whose slots hold abstract edge ids, then renumber arcs by walking the
// strand (rewalk) and re-root each crossing at its under-in slot.

#include <algorithm>
#include <cmath>
#include <numbers>

#include "pinchlab/diagram.hpp"

namespace pinchlab {
namespace {

// abstract edge id used while a surgery is in flight
struct edge_key {
  int ns = 0;  // 1/2: factor arcs, 3: splice bridges, 4/5: strand pieces,
               // 6: twist-region internals
  long long a = 0;
  friend auto operator<=>(const edge_key&, const edge_key&) = default;
};

using proto_crossing = std::array<edge_key, 4>;

struct rewalk_result {
  std::vector<std::array<int, 4>> tuples;
  std::map<edge_key, int> arc_of_edge;
};

// Renumber arcs 1..2N along the strand starting at the under-out of the
// first crossing, then root every crossing so slot 0 is its under-in.
// Slot 0 of each input crossing must carry an under-strand edge (the
// surgeries preserve that), so roots land at slot 0 or 2.
rewalk_result rewalk(const std::vector<proto_crossing>& cr) {
  const int n = static_cast<int>(cr.size());
  const int n2 = 2 * n;
  std::map<edge_key, std::vector<std::pair<int, int>>> occ;
  for (int k = 0; k < n; ++k) {
    for (int s = 0; s < 4; ++s) occ[cr[k][s]].push_back({k, s});
  }
  for (const auto& [e, ps] : occ) {
    if (ps.size() != 2) {
      throw verification_error("surgery edge with " +
                               std::to_string(ps.size()) + " endpoints");
    }
  }
  std::map<std::pair<int, int>, int> arc_of_slot;
  rewalk_result out;
  const std::pair<int, int> start{0, 0};
  int k = 0, s_in = 0, arc = 0;
  while (true) {
    ++arc;
    const int s_out = (s_in + 2) % 4;
    const edge_key e = cr[k][s_out];
    arc_of_slot[{k, s_out}] = arc;
    out.arc_of_edge[e] = arc;
    const auto& ps = occ[e];
    const auto next =
        (ps[0] == std::make_pair(k, s_out)) ? ps[1] : ps[0];
    arc_of_slot[next] = arc;
    if (next == start) break;
    k = next.first;
    s_in = next.second;
  }
  if (static_cast<int>(arc_of_slot.size()) != 4 * n) {
    throw precondition_error("surgery produced more than one component");
  }
  out.tuples.reserve(n);
  for (int kk = 0; kk < n; ++kk) {
    const int a0 = arc_of_slot[{kk, 0}];
    const int a2 = arc_of_slot[{kk, 2}];
    const int u = (a2 == a0 % n2 + 1) ? 0 : 2;
    std::array<int, 4> t{};
    for (int di = 0; di < 4; ++di) t[di] = arc_of_slot[{kk, (u + di) % 4}];
    out.tuples.push_back(t);
  }
  return out;
}

// where each arc leaves (tail) and enters (head) its crossings, as
// 0-based (crossing index, slot) pairs
struct endpoints {
  std::map<int, std::pair<int, int>> tails, heads;
};

endpoints arc_endpoints(const Diagram& d) {
  endpoints out;
  for (const Crossing& cr : d.crossings()) {
    const int k = cr.id - 1;
    out.heads[cr.arcs[0]] = {k, 0};
    out.tails[cr.arcs[2]] = {k, 2};
    if (cr.sign > 0) {
      out.heads[cr.arcs[3]] = {k, 3};
      out.tails[cr.arcs[1]] = {k, 1};
    } else {
      out.heads[cr.arcs[1]] = {k, 1};
      out.tails[cr.arcs[3]] = {k, 3};
    }
  }
  return out;
}

void check_arc(const Diagram& d, int arc, const char* what) {
  if (arc < 1 || arc > d.arc_count()) {
    throw precondition_error(std::string(what) + " arc " +
                             std::to_string(arc) + " out of range");
  }
}

}  // namespace

ConnectedSum connected_sum_detail(const Diagram& d1, int arc_a,
                                  const Diagram& d2, int arc_a2) {
  check_arc(d1, arc_a, "first cut");
  check_arc(d2, arc_a2, "second cut");
  const int n1 = d1.crossing_count();
  std::vector<proto_crossing> cr;
  for (const Crossing& c : d1.crossings()) {
    proto_crossing p;
    for (int s = 0; s < 4; ++s) p[s] = {1, c.arcs[s]};
    cr.push_back(p);
  }
  for (const Crossing& c : d2.crossings()) {
    proto_crossing p;
    for (int s = 0; s < 4; ++s) p[s] = {2, c.arcs[s]};
    cr.push_back(p);
  }
  const endpoints e1 = arc_endpoints(d1);
  const endpoints e2 = arc_endpoints(d2);
  const auto [xk, xs] = e1.tails.at(arc_a);
  const auto [yk, ys] = e1.heads.at(arc_a);
  const auto [xk2, xs2] = e2.tails.at(arc_a2);
  const auto [yk2, ys2] = e2.heads.at(arc_a2);
  // bridge 1 runs d1-tail -> d2-head, bridge 2 runs d2-tail -> d1-head
  cr[xk][xs] = {3, 1};
  cr[n1 + yk2][ys2] = {3, 1};
  cr[n1 + xk2][xs2] = {3, 2};
  cr[yk][ys] = {3, 2};
  rewalk_result rw = rewalk(cr);

  ConnectedSum out;
  out.tuples = std::move(rw.tuples);
  for (const auto& [e, a] : rw.arc_of_edge) {
    if (e.ns == 1) out.first_arcs[static_cast<int>(e.a)] = a;
    if (e.ns == 2) out.second_arcs[static_cast<int>(e.a)] = a;
  }
  out.bridge1 = rw.arc_of_edge.at({3, 1});
  out.bridge2 = rw.arc_of_edge.at({3, 2});
  return out;
}

Diagram connected_sum(const Diagram& d1, int arc_a, const Diagram& d2,
                      int arc_a2) {
  return Diagram(connected_sum_detail(d1, arc_a, d2, arc_a2).tuples);
}

RMove reidemeister2_detail(const Diagram& d, int arc_b, int arc_b2,
                           bool b_over, int region_id) {
  check_arc(d, arc_b, "moved");
  check_arc(d, arc_b2, "target");
  const int n_old = d.crossing_count();

  // find a region bordered exactly once by each of the two arcs
  const Region* target = nullptr;
  std::vector<int> edge_seq;
  for (const Region& reg : d.regions()) {
    if (region_id != 0 && reg.id != region_id) continue;
    std::vector<int> edges;
    for (const Corner& c : reg.corners) {
      edges.push_back(d.crossing(c.crossing).arcs[(c.quadrant + 1) % 4]);
    }
    const auto cnt = [&](int a) {
      return std::count(edges.begin(), edges.end(), a);
    };
    if (cnt(arc_b) == 1 && cnt(arc_b2) == 1) {
      target = &reg;
      edge_seq = std::move(edges);
      break;
    }
  }
  if (!target) {
    throw precondition_error("arcs " + std::to_string(arc_b) + " and " +
                             std::to_string(arc_b2) +
                             " do not border a common region simply");
  }
  const int m = static_cast<int>(target->corners.size());
  const int pb = static_cast<int>(
      std::find(edge_seq.begin(), edge_seq.end(), arc_b) - edge_seq.begin());
  const int pbp = static_cast<int>(
      std::find(edge_seq.begin(), edge_seq.end(), arc_b2) - edge_seq.begin());

  // Disk model of the region: boundary position t in [0,m) on the unit
  // circle, edge i occupying (i, i+1) in trace order. A finger is pushed
  // from the span of arc_b just past the span of arc_b2; its two circle
  // hits are the new crossings.
  using pt = std::array<double, 2>;
  const double two_pi = 2 * std::numbers::pi;
  const auto circ = [&](double tpos) -> pt {
    const double ang = two_pi * tpos / m;
    return {std::cos(ang), std::sin(ang)};
  };

  const endpoints ep = arc_endpoints(d);
  const auto face_dir = [&](int pos, int a) {
    // +1 when the strand of arc a runs with the trace direction across
    // the region boundary at position pos
    const int k_from = target->corners[pos].crossing - 1;
    return ep.tails.at(a).first == k_from ? 1 : -1;
  };
  const int dir_b = face_dir(pb, arc_b);
  const int dir_bp = face_dir(pbp, arc_b2);

  const pt b0 = circ(pb + 0.1);
  const pt b1 = circ(pb + 0.9);
  const pt mid_bp = circ(pbp + 0.5);
  const pt tip{mid_bp[0] * 1.25, mid_bp[1] * 1.25};

  const auto seg_circle_hit = [&](const pt& p, const pt& q) {
    double lo = 0.0, hi = 1.0;
    const auto rad = [&](double t) {
      const double x = p[0] + t * (q[0] - p[0]);
      const double y = p[1] + t * (q[1] - p[1]);
      return std::hypot(x, y) - 1.0;
    };
    const double flo = rad(lo);
    for (int it = 0; it < 80; ++it) {
      const double mid = (lo + hi) / 2;
      if ((rad(mid) > 0) == (flo > 0)) {
        lo = mid;
      } else {
        hi = mid;
      }
    }
    const double x = p[0] + lo * (q[0] - p[0]);
    const double y = p[1] + lo * (q[1] - p[1]);
    double ang = std::fmod(std::atan2(y, x), two_pi);
    if (ang < 0) ang += two_pi;
    return ang;
  };

  const double phi1 = seg_circle_hit(b0, tip) * m / two_pi;
  const double phi2 = seg_circle_hit(b1, tip) * m / two_pi;
  const auto inspan = [&](double x) {
    double dd = std::fmod(x - pbp, static_cast<double>(m));
    if (dd < 0) dd += m;
    return 0 < dd && dd < 1;
  };
  if (!inspan(phi1) || !inspan(phi2)) {
    throw verification_error("finger construction left the target span");
  }
  const double off1 = std::fmod(phi1 - pbp + m, static_cast<double>(m));
  const double off2 = std::fmod(phi2 - pbp + m, static_cast<double>(m));
  const bool p_first_on_bp = off1 < off2;

  std::vector<proto_crossing> cr;
  for (const Crossing& c : d.crossings()) {
    proto_crossing p;
    for (int s = 0; s < 4; ++s) p[s] = {1, c.arcs[s]};
    cr.push_back(p);
  }
  const std::array<edge_key, 3> nb{{{4, 0}, {4, 1}, {4, 2}}};
  const std::array<edge_key, 3> np{{{5, 0}, {5, 1}, {5, 2}}};
  const int p_idx = n_old, q_idx = n_old + 1;

  // crossing order along each strand
  const std::array<int, 2> b_order =
      dir_b > 0 ? std::array<int, 2>{p_idx, q_idx}
                : std::array<int, 2>{q_idx, p_idx};
  std::array<int, 2> bp_order{};
  if (dir_bp > 0) {
    bp_order = p_first_on_bp ? std::array<int, 2>{p_idx, q_idx}
                             : std::array<int, 2>{q_idx, p_idx};
  } else {
    bp_order = p_first_on_bp ? std::array<int, 2>{q_idx, p_idx}
                             : std::array<int, 2>{p_idx, q_idx};
  }

  const auto tangent = [](const pt& a, const pt& b) {
    return pt{b[0] - a[0], b[1] - a[1]};
  };
  const auto neg = [](const pt& v) { return pt{-v[0], -v[1]}; };
  const auto cross_sign = [](const pt& v1, const pt& v2) {
    return v1[0] * v2[1] - v1[1] * v2[0];
  };
  const auto circ_tan = [&](double pos) {
    const double ang = two_pi * pos / m;
    return pt{-std::sin(ang), std::cos(ang)};
  };
  const pt vb_at_p = dir_b > 0 ? tangent(b0, tip) : neg(tangent(b0, tip));
  const pt vb_at_q = dir_b > 0 ? tangent(tip, b1) : neg(tangent(tip, b1));
  const pt vbp_at_p = dir_bp > 0 ? circ_tan(phi1) : neg(circ_tan(phi1));
  const pt vbp_at_q = dir_bp > 0 ? circ_tan(phi2) : neg(circ_tan(phi2));

  // segments around a crossing along one strand: segs[0] -> order[0] ->
  // segs[1] -> order[1] -> segs[2]
  const auto segpair = [](const std::array<int, 2>& order,
                          const std::array<edge_key, 3>& segs, int idx) {
    const int i = order[0] == idx ? 0 : 1;
    return std::pair<edge_key, edge_key>{segs[i], segs[i + 1]};
  };
  const auto [b_in_p, b_out_p] = segpair(b_order, nb, p_idx);
  const auto [b_in_q, b_out_q] = segpair(b_order, nb, q_idx);
  const auto [bp_in_p, bp_out_p] = segpair(bp_order, np, p_idx);
  const auto [bp_in_q, bp_out_q] = segpair(bp_order, np, q_idx);

  const auto build_new_crossing =
      [&](const edge_key& bseg_in, const edge_key& bseg_out,
          const edge_key& bpseg_in, const edge_key& bpseg_out, const pt& vb,
          const pt& vbp) -> proto_crossing {
    edge_key under_in, under_out, over_in, over_out;
    pt vu, vo;
    if (b_over) {
      under_in = bpseg_in;
      under_out = bpseg_out;
      over_in = bseg_in;
      over_out = bseg_out;
      vu = vbp;
      vo = vb;
    } else {
      under_in = bseg_in;
      under_out = bseg_out;
      over_in = bpseg_in;
      over_out = bpseg_out;
      vu = vb;
      vo = vbp;
    }
    // counterclockwise from under-in: a positive cross product puts the
    // over-in at slot 3, otherwise at slot 1
    if (cross_sign(vu, vo) > 0) {
      return {under_in, over_out, under_out, over_in};
    }
    return {under_in, over_in, under_out, over_out};
  };
  cr.push_back(build_new_crossing(b_in_p, b_out_p, bp_in_p, bp_out_p,
                                  vb_at_p, vbp_at_p));
  cr.push_back(build_new_crossing(b_in_q, b_out_q, bp_in_q, bp_out_q,
                                  vb_at_q, vbp_at_q));

  // splice the strand pieces into the old endpoints of both arcs
  const auto tb = ep.tails.at(arc_b), hb = ep.heads.at(arc_b);
  cr[tb.first][tb.second] = nb[0];
  cr[hb.first][hb.second] = nb[2];
  const auto tp2 = ep.tails.at(arc_b2), hp2 = ep.heads.at(arc_b2);
  cr[tp2.first][tp2.second] = np[0];
  cr[hp2.first][hp2.second] = np[2];

  rewalk_result rw = rewalk(cr);
  RMove out;
  out.tuples = std::move(rw.tuples);
  out.crossing_p = p_idx + 1;
  out.crossing_q = q_idx + 1;
  for (const auto& [e, a] : rw.arc_of_edge) {
    if (e.ns == 1) out.old_arcs[static_cast<int>(e.a)] = a;
    if (e.ns == 4) out.b_segments[static_cast<std::size_t>(e.a)] = a;
    if (e.ns == 5) out.b2_segments[static_cast<std::size_t>(e.a)] = a;
  }
  return out;
}

std::pair<Diagram, std::pair<int, int>> reidemeister2(const Diagram& d,
                                                      int arc_b, int arc_b2,
                                                      bool b_over,
                                                      int region_id) {
  RMove mv = reidemeister2_detail(d, arc_b, arc_b2, b_over, region_id);
  return {Diagram(mv.tuples), {mv.crossing_p, mv.crossing_q}};
}

namespace {

// corners of a twist-chain crossing, counterclockwise
constexpr std::array<const char*, 4> k_ccw{"SW", "SE", "NE", "NW"};
constexpr int k_sw = 0, k_se = 1, k_ne = 2, k_nw = 3;
constexpr int diag_of(int c) {
  // strands pass straight through: SW<->NE, SE<->NW
  return c ^ 2;
}

}  // namespace

TangleInsertion insert_tangle_detail(const Diagram& d, int crossing_id,
                                     const std::vector<int>& word) {
  if (word.empty()) throw precondition_error("empty twist word");
  for (std::size_t i = 0; i + 1 < word.size(); ++i) {
    if (word[i] == 0 || word[i] % 2 != 0) {
      throw precondition_error("leading twist entries must be nonzero even");
    }
  }
  if (word.back() % 2 == 0) {
    throw precondition_error("last twist entry must be odd");
  }
  if (crossing_id < 1 || crossing_id > d.crossing_count()) {
    throw precondition_error("crossing id " + std::to_string(crossing_id) +
                             " out of range");
  }
  const int n = d.crossing_count();
  const int k = crossing_id - 1;
  const auto& old_arcs = d.crossing(crossing_id).arcs;
  const int sign_k = d.crossing(crossing_id).sign;

  // global indices for the twist crossings, chain by chain
  std::vector<int> chain_start;
  std::vector<int> chain_len;
  int total = 0;
  for (int e : word) {
    chain_start.push_back(total);
    chain_len.push_back(std::abs(e));
    total += std::abs(e);
  }

  // union-find over stubs: handle = 4*global + corner
  std::vector<int> uf(4 * total);
  for (std::size_t h = 0; h < uf.size(); ++h) uf[h] = static_cast<int>(h);
  const auto find = [&](int h) {
    while (uf[h] != h) {
      uf[h] = uf[uf[h]];
      h = uf[h];
    }
    return h;
  };
  const auto weld = [&](int h1, int h2) {
    const int r1 = find(h1), r2 = find(h2);
    if (r1 != r2) uf[std::max(r1, r2)] = std::min(r1, r2);
  };
  const auto stub = [&](int ci, int s, int corner) {
    return 4 * (chain_start[ci] + s) + corner;
  };

  // chain internals: crossing s tops (NW,NE) weld to s+1 bottoms (SW,SE)
  for (std::size_t ci = 0; ci < word.size(); ++ci) {
    for (int s = 0; s + 1 < chain_len[ci]; ++s) {
      weld(stub(static_cast<int>(ci), s, k_nw),
           stub(static_cast<int>(ci), s + 1, k_sw));
      weld(stub(static_cast<int>(ci), s, k_ne),
           stub(static_cast<int>(ci), s + 1, k_se));
    }
  }
  // stage welds: odd stages wrap the bottom, even stages wrap the right
  std::array<int, 4> outer{stub(0, 0, k_sw), stub(0, 0, k_se),
                           stub(0, chain_len[0] - 1, k_ne),
                           stub(0, chain_len[0] - 1, k_nw)};
  for (int ci = 1; ci < static_cast<int>(word.size()); ++ci) {
    const int t = chain_len[ci];
    if (ci % 2 == 1) {
      weld(stub(ci, 0, k_sw), outer[k_sw]);
      weld(stub(ci, t - 1, k_nw), outer[k_se]);
      outer[k_sw] = stub(ci, 0, k_se);
      outer[k_se] = stub(ci, t - 1, k_ne);
    } else {
      weld(stub(ci, 0, k_sw), outer[k_se]);
      weld(stub(ci, t - 1, k_nw), outer[k_ne]);
      outer[k_se] = stub(ci, 0, k_se);
      outer[k_ne] = stub(ci, t - 1, k_ne);
    }
  }

  // edge of each stub: external on the four outer stubs, internal class
  // representative elsewhere
  std::map<int, edge_key> external;  // root handle -> old arc edge
  for (int c = 0; c < 4; ++c) {
    external[find(outer[c])] = edge_key{1, old_arcs[c]};
  }
  const auto edge_at = [&](int handle) -> edge_key {
    const int r = find(handle);
    const auto it = external.find(r);
    if (it != external.end()) return it->second;
    return edge_key{6, r};
  };

  // strand flow: walk in from the two inbound outer corners, recording
  // where each twist crossing is entered; strands run along diagonals
  std::map<edge_key, std::vector<std::pair<int, int>>> incidence;
  for (int g = 0; g < total; ++g) {
    for (int c = 0; c < 4; ++c) incidence[edge_at(4 * g + c)].push_back({g, c});
  }
  std::vector<std::set<int>> enters(total);
  const std::array<int, 2> inbound{k_sw, sign_k > 0 ? k_nw : k_se};
  for (int corner : inbound) {
    edge_key e{1, old_arcs[corner]};
    auto occ = incidence.find(e);
    if (occ == incidence.end() || occ->second.size() != 1) {
      throw precondition_error(
          "twist region boundary arcs must be distinct at the crossing");
    }
    auto [g, c] = occ->second[0];
    while (true) {
      enters[g].insert(c);
      const int out_c = diag_of(c);
      const edge_key oe = edge_at(4 * g + out_c);
      const auto& inc = incidence[oe];
      bool moved = false;
      for (const auto& [g2, c2] : inc) {
        if (g2 == g && c2 == out_c) continue;
        g = g2;
        c = c2;
        moved = true;
        break;
      }
      if (!moved) break;  // left the twist region
    }
  }

  // root each twist crossing at its under-in; a positive word entry puts
  // the NW-SE diagonal on top (entry +1 alone reproduces the crossing)
  std::vector<proto_crossing> local;
  for (int ci = 0; ci < static_cast<int>(word.size()); ++ci) {
    const bool over_nw_se = word[ci] > 0;
    for (int s = 0; s < chain_len[ci]; ++s) {
      const int g = chain_start[ci] + s;
      if (enters[g].size() != 2) {
        throw verification_error("strand flow failed inside the twist region");
      }
      int under_in = -1;
      for (int c : enters[g]) {
        const bool on_over = over_nw_se ? (c == k_nw || c == k_se)
                                        : (c == k_sw || c == k_ne);
        if (!on_over) under_in = c;
      }
      if (under_in < 0) {
        throw verification_error("no under entry at a twist crossing");
      }
      proto_crossing p;
      for (int di = 0; di < 4; ++di) p[di] = edge_at(4 * g + ((under_in + di) % 4));
      local.push_back(p);
    }
  }

  // assemble: crossing k is replaced by the first twist crossing, the rest
  // are appended after the old crossings
  std::vector<proto_crossing> full;
  for (int kk = 0; kk < n; ++kk) {
    if (kk == k) {
      full.push_back(local[0]);
    } else {
      proto_crossing p;
      for (int s = 0; s < 4; ++s) p[s] = {1, d.crossings()[kk].arcs[s]};
      full.push_back(p);
    }
  }
  for (std::size_t t = 1; t < local.size(); ++t) full.push_back(local[t]);

  TangleInsertion out;
  out.tangle_crossings.push_back(crossing_id);
  for (int t = 1; t < total; ++t) out.tangle_crossings.push_back(n + t);
  rewalk_result rw = rewalk(full);
  out.tuples = std::move(rw.tuples);

  // map the surviving regions through corners at untouched crossings
  Diagram nd(out.tuples);
  for (const Region& reg : d.regions()) {
    int mapped = 0;
    for (const Corner& c : reg.corners) {
      if (c.crossing == crossing_id) continue;
      const int nid = nd.region_at(c.crossing, c.quadrant);
      if (mapped == 0) {
        mapped = nid;
      } else if (mapped != nid) {
        throw verification_error("twist insertion scattered region " +
                                 std::to_string(reg.id));
      }
    }
    if (mapped != 0) out.region_map[reg.id] = mapped;
  }
  return out;
}

Diagram insert_tangle_diagram(const Diagram& d, int crossing_id,
                              const std::vector<int>& word) {
  return Diagram(insert_tangle_detail(d, crossing_id, word).tuples);
}

}  // namespace pinchlab
