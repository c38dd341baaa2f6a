#include "pinchlab/diagram.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace pinchlab {

int quadrant_of_letter(char letter) {
  if (letter < 'a' || letter > 'd') {
    throw parse_error(std::string("quadrant letter out of range: ") + letter);
  }
  return letter - 'a';
}

namespace {

int successor(int arc, int n2) { return arc % n2 + 1; }

// Orient each crossing. The over-strand occupies slots 1 and 3; it runs
// 3 -> 1 at a positive crossing and 1 -> 3 at a negative one. When both
// readings are possible the crossing is a one-crossing curl and the
// under-out arc disambiguates.
std::vector<int> crossing_signs(const std::vector<std::array<int, 4>>& tuples) {
  const int n2 = 2 * static_cast<int>(tuples.size());
  std::vector<int> out;
  out.reserve(tuples.size());
  for (std::size_t k = 0; k < tuples.size(); ++k) {
    const auto& t = tuples[k];
    const int j = t[1], kk = t[2], l = t[3];
    const bool pos = successor(l, n2) == j;
    const bool neg = successor(j, n2) == l;
    if (pos && neg) {
      out.push_back(l == kk ? 1 : -1);
    } else if (pos) {
      out.push_back(1);
    } else if (neg) {
      out.push_back(-1);
    } else {
      throw parse_error("crossing " + std::to_string(k + 1) +
                        ": over-strand arcs are not consecutive");
    }
  }
  return out;
}

}  // namespace

Diagram::Diagram(std::vector<std::array<int, 4>> tuples) {
  const int n = static_cast<int>(tuples.size());
  if (n < 1) throw parse_error("diagram needs at least one crossing");
  const int n2 = 2 * n;

  std::vector<int> arc_uses(n2 + 1, 0);
  for (int k = 0; k < n; ++k) {
    for (int s = 0; s < 4; ++s) {
      const int a = tuples[k][s];
      if (a < 1 || a > n2) {
        throw parse_error("crossing " + std::to_string(k + 1) +
                          ": arc label " + std::to_string(a) +
                          " outside 1.." + std::to_string(n2));
      }
      ++arc_uses[a];
    }
    if (tuples[k][2] != successor(tuples[k][0], n2)) {
      throw parse_error("crossing " + std::to_string(k + 1) +
                        ": under-out arc is not the successor of under-in");
    }
  }
  for (int a = 1; a <= n2; ++a) {
    if (arc_uses[a] != 2) {
      throw parse_error("arc " + std::to_string(a) + " appears " +
                        std::to_string(arc_uses[a]) + " times, expected 2");
    }
  }

  const std::vector<int> sg = crossing_signs(tuples);
  crossings_.resize(n);
  for (int k = 0; k < n; ++k) {
    crossings_[k] = Crossing{k + 1, sg[k], tuples[k]};
  }

  // Trace the complementary regions. From the corner between slots q and
  // q+1 of crossing k, the boundary continues at the other occurrence of
  // the arc in slot q+1, entering at the slot where that arc sits.
  std::map<int, std::vector<std::pair<int, int>>> occurrences;
  for (int k = 0; k < n; ++k) {
    for (int s = 0; s < 4; ++s) {
      occurrences[tuples[k][s]].push_back({k, s});
    }
  }
  region_of_corner_.assign(4 * n, 0);
  std::vector<bool> used(4 * n, false);
  for (int k0 = 0; k0 < n; ++k0) {
    for (int q0 = 0; q0 < 4; ++q0) {
      if (used[4 * k0 + q0]) continue;
      Region reg;
      reg.id = static_cast<int>(regions_.size()) + 1;
      int k = k0, q = q0;
      while (true) {
        reg.corners.push_back(Corner{k + 1, q});
        used[4 * k + q] = true;
        region_of_corner_[4 * k + q] = reg.id;
        const int e = tuples[k][(q + 1) % 4];
        const auto& occ = occurrences[e];
        const auto other =
            (occ[0] == std::make_pair(k, (q + 1) % 4)) ? occ[1] : occ[0];
        k = other.first;
        q = other.second;
        if (k == k0 && q == q0) break;
      }
      regions_.push_back(std::move(reg));
    }
  }
  if (static_cast<int>(regions_.size()) != n + 2) {
    throw parse_error("region count " + std::to_string(regions_.size()) +
                      " differs from " + std::to_string(n + 2) +
                      "; not a single-component knot projection");
  }
}

const Crossing& Diagram::crossing(int id) const {
  if (id < 1 || id > crossing_count()) {
    throw precondition_error("crossing id " + std::to_string(id) +
                             " out of range");
  }
  return crossings_[id - 1];
}

const Region& Diagram::region(int id) const {
  if (id < 1 || id > region_count()) {
    throw precondition_error("region id " + std::to_string(id) +
                             " out of range");
  }
  return regions_[id - 1];
}

int Diagram::region_at(int crossing_id, int quadrant) const {
  if (crossing_id < 1 || crossing_id > crossing_count() || quadrant < 0 ||
      quadrant > 3) {
    throw precondition_error("corner out of range");
  }
  return region_of_corner_[4 * (crossing_id - 1) + quadrant];
}

int Diagram::next_arc(int arc) const {
  if (arc < 1 || arc > arc_count()) {
    throw precondition_error("arc id " + std::to_string(arc) + " out of range");
  }
  return arc % arc_count() + 1;
}

std::string Diagram::pd() const {
  std::ostringstream os;
  for (std::size_t k = 0; k < crossings_.size(); ++k) {
    if (k) os << ' ';
    const auto& a = crossings_[k].arcs;
    os << "X[" << a[0] << ',' << a[1] << ',' << a[2] << ',' << a[3] << ']';
  }
  return os.str();
}

void Diagram::renumber_regions(const std::vector<int>& id_for_current) {
  // id_for_current[current id] = desired id; must be a permutation
  std::vector<Region> renamed(regions_.size());
  for (auto& reg : regions_) {
    const int nid = id_for_current[reg.id];
    if (nid < 1 || nid > region_count() || renamed[nid - 1].id != 0) {
      throw verification_error("region renumbering is not a permutation");
    }
    reg.id = nid;
    renamed[nid - 1] = reg;
  }
  regions_ = std::move(renamed);
  for (const auto& reg : regions_) {
    for (const Corner& c : reg.corners) {
      region_of_corner_[4 * (c.crossing - 1) + c.quadrant] = reg.id;
    }
  }
}

Diagram parse_pd(const std::string& text) {
  std::vector<std::array<int, 4>> tuples;
  std::size_t i = 0;
  // between tuples, commas and semicolons are optional separators; inside
  // a tuple only blanks may pad the numbers, the commas are structural
  const auto skip_blank = [&] {
    while (i < text.size() &&
           std::isspace(static_cast<unsigned char>(text[i]))) {
      ++i;
    }
  };
  const auto skip_sep = [&] {
    while (i < text.size() &&
           (std::isspace(static_cast<unsigned char>(text[i])) ||
            text[i] == ',' || text[i] == ';')) {
      ++i;
    }
  };
  skip_sep();
  while (i < text.size()) {
    if (text[i] != 'X' && text[i] != 'x') {
      throw parse_error("expected 'X[' at position " + std::to_string(i));
    }
    ++i;
    if (i >= text.size() || text[i] != '[') {
      throw parse_error("expected '[' after X");
    }
    ++i;
    std::array<int, 4> t{};
    for (int s = 0; s < 4; ++s) {
      skip_blank();
      std::size_t start = i;
      while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) ++i;
      if (start == i) throw parse_error("expected arc number in crossing");
      t[s] = std::stoi(text.substr(start, i - start));
      skip_blank();
      if (s < 3) {
        if (i >= text.size() || text[i] != ',') {
          throw parse_error("expected ',' between arc numbers");
        }
        ++i;
      }
    }
    if (i >= text.size() || text[i] != ']') {
      throw parse_error("expected ']' closing crossing");
    }
    ++i;
    tuples.push_back(t);
    skip_sep();
  }
  if (tuples.empty()) throw parse_error("no crossings in PD text");
  return Diagram(std::move(tuples));
}

WirtingerPresentation wirtinger(const Diagram& d) {
  const int n2 = d.arc_count();
  // union-find over arcs; the over-strand pairs (slots 1 and 3) share a
  // meridian generator
  std::vector<int> parent(n2 + 1);
  for (int a = 0; a <= n2; ++a) parent[a] = a;
  const auto find = [&](int a) {
    while (parent[a] != a) {
      parent[a] = parent[parent[a]];
      a = parent[a];
    }
    return a;
  };
  for (const Crossing& cr : d.crossings()) {
    const int ra = find(cr.arcs[1]);
    const int rb = find(cr.arcs[3]);
    if (ra != rb) parent[std::max(ra, rb)] = std::min(ra, rb);
  }

  WirtingerPresentation out;
  out.class_of_arc.assign(n2 + 1, -1);
  std::map<int, int> class_of_root;
  for (int a = 1; a <= n2; ++a) {
    const int r = find(a);
    auto it = class_of_root.find(r);
    if (it == class_of_root.end()) {
      it = class_of_root.insert({r, out.generator_count++}).first;
    }
    out.class_of_arc[a] = it->second;
  }
  for (const Crossing& cr : d.crossings()) {
    out.relations.push_back({cr.id, cr.arcs[0], cr.arcs[1], cr.arcs[2],
                             cr.sign});
  }
  return out;
}

namespace {

std::array<int, 4> switch_tuple(const std::array<int, 4>& t, int sign) {
  if (sign > 0) return {t[3], t[0], t[1], t[2]};
  return {t[1], t[2], t[3], t[0]};
}

}  // namespace

Diagram mirror(const Diagram& d) {
  std::vector<std::array<int, 4>> tuples;
  tuples.reserve(d.crossing_count());
  for (const Crossing& cr : d.crossings()) {
    tuples.push_back(switch_tuple(cr.arcs, cr.sign));
  }
  return Diagram(std::move(tuples));
}

Diagram change_crossings(const Diagram& d, const std::set<int>& J) {
  for (int k : J) {
    if (k < 1 || k > d.crossing_count()) {
      throw precondition_error("crossing id " + std::to_string(k) +
                               " out of range");
    }
  }
  std::vector<std::array<int, 4>> tuples;
  tuples.reserve(d.crossing_count());
  for (const Crossing& cr : d.crossings()) {
    tuples.push_back(J.count(cr.id) ? switch_tuple(cr.arcs, cr.sign)
                                    : cr.arcs);
  }
  Diagram out(std::move(tuples));

  // Rebase the freshly traced regions onto d's numbering. Switching a
  // crossing rotates its tuple, so the corner in quadrant q moves to
  // quadrant q+1 (positive crossing) or q-1 (negative); corners at
  // untouched crossings stay put.
  std::vector<int> id_for_current(out.region_count() + 1, 0);
  std::vector<bool> taken(out.region_count() + 1, false);
  for (const Region& reg : d.regions()) {
    int target = 0;
    for (const Corner& c : reg.corners) {
      int q = c.quadrant;
      if (J.count(c.crossing)) {
        q = (d.crossing(c.crossing).sign > 0) ? (q + 1) % 4 : (q + 3) % 4;
      }
      const int nid = out.region_at(c.crossing, q);
      if (target == 0) {
        target = nid;
      } else if (target != nid) {
        throw verification_error("crossing change scattered region " +
                                 std::to_string(reg.id));
      }
    }
    if (taken[target]) {
      throw verification_error("crossing change merged regions");
    }
    taken[target] = true;
    id_for_current[target] = reg.id;
  }
  out.renumber_regions(id_for_current);
  return out;
}

}  // namespace pinchlab
