#pragma once

// Oriented knot diagrams in PD notation, their complementary regions, and
// the diagram surgeries used by the rest of the library.
//
// Conventions (fixed across the whole project):
//   * A crossing X[i,j,k,l] lists the four arc labels counterclockwise
//     starting from the incoming under-strand, so slot 0 is the under-in
//     arc and slot 2 (which must be the successor of slot 0 along the
//     knot) is the under-out arc.
//   * Arcs are numbered 1..2N along the orientation; the successor of arc
//     a is a % 2N + 1.
//   * A crossing is positive when the over-strand runs from slot 3 to
//     slot 1, negative when it runs from slot 1 to slot 3.
//   * Quadrant q at a crossing is the corner between slots q and
//     (q+1) % 4; quadrants are written a,b,c,d for q = 0,1,2,3.
//   * Regions (complementary faces of the projection) are traced once and
//     numbered 1..N+2 in a deterministic scan order.

#include <array>
#include <complex>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace pinchlab {

using cplx = std::complex<double>;

// malformed textual or structural input
struct parse_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// a caller violated a documented precondition
struct precondition_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// a numeric degeneracy (coincident region values, vanishing denominator)
struct degeneracy_error : precondition_error {
  using precondition_error::precondition_error;
};

// an internal consistency check failed; indicates a bug, not bad input
struct verification_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Crossing {
  int id = 0;                 // 1-based
  int sign = 0;               // +1 or -1
  std::array<int, 4> arcs{};  // slots 0..3, counterclockwise from under-in
};

struct Corner {
  int crossing = 0;  // 1-based crossing id
  int quadrant = 0;  // 0..3
  friend bool operator==(const Corner&, const Corner&) = default;
  friend auto operator<=>(const Corner&, const Corner&) = default;
};

struct Region {
  int id = 0;  // 1-based
  std::vector<Corner> corners;
};

inline char quadrant_letter(int q) { return static_cast<char>('a' + q); }

int quadrant_of_letter(char letter);  // 'a'..'d' -> 0..3, throws parse_error

class Diagram {
 public:
  // tuples[k] = {i, j, k, l} per crossing; validates, orients, traces regions
  explicit Diagram(std::vector<std::array<int, 4>> tuples);

  int crossing_count() const { return static_cast<int>(crossings_.size()); }
  int arc_count() const { return 2 * crossing_count(); }
  int region_count() const { return static_cast<int>(regions_.size()); }

  const std::vector<Crossing>& crossings() const { return crossings_; }
  const Crossing& crossing(int id) const;  // 1-based
  const std::vector<Region>& regions() const { return regions_; }
  const Region& region(int id) const;  // 1-based

  // region id owning the corner at (crossing id, quadrant)
  int region_at(int crossing_id, int quadrant) const;

  int next_arc(int arc) const;  // successor along the orientation

  std::string pd() const;  // "X[i,j,k,l] X[...] ..." text form

 private:
  void renumber_regions(const std::vector<int>& id_for_current);
  friend Diagram change_crossings(const Diagram&, const std::set<int>&);

  std::vector<Crossing> crossings_;
  std::vector<Region> regions_;
  std::vector<int> region_of_corner_;  // [(k-1)*4 + q] -> region id
};

// parse "X[i,j,k,l] X[...]" text; throws parse_error on malformed input
Diagram parse_pd(const std::string& text);

// Wirtinger presentation data: meridian generator classes (one per
// over-strand) and one conjugation relation per crossing.
struct WirtingerPresentation {
  int generator_count = 0;
  std::vector<int> class_of_arc;  // size 2N+1, entry 0 unused (= -1)
  struct Relation {
    int crossing;    // 1-based
    int under_in;    // arc at slot 0
    int over;        // arc at slot 1 (same class as slot 3)
    int under_out;   // arc at slot 2
    int sign;
  };
  std::vector<Relation> relations;
};

WirtingerPresentation wirtinger(const Diagram& d);

// reverse every crossing (reflect the diagram through the projection plane)
Diagram mirror(const Diagram& d);

// Switch the over/under assignment at the crossings in J (1-based ids).
// Arc labels are untouched; region ids are carried across so a region-value
// vector for d indexes the result unchanged.
Diagram change_crossings(const Diagram& d, const std::set<int>& J);

// Connected sum: cut arc_a of d1 and arc_a2 of d2, splice the strands.
struct ConnectedSum {
  std::vector<std::array<int, 4>> tuples;  // composite pd tuples
  std::map<int, int> first_arcs;           // surviving d1 arc -> new arc
  std::map<int, int> second_arcs;          // surviving d2 arc -> new arc
  int bridge1 = 0;  // new arc: d1-side tail of the cut joins d2-side head
  int bridge2 = 0;  // new arc: d2-side tail joins d1-side head
};
ConnectedSum connected_sum_detail(const Diagram& d1, int arc_a,
                                  const Diagram& d2, int arc_a2);
Diagram connected_sum(const Diagram& d1, int arc_a,
                      const Diagram& d2, int arc_a2);

// Push arc_b across a region it shares with arc_b2, crossing over it when
// b_over is true (under otherwise). region_id = 0 picks the first region
// bordered simply by both arcs.
struct RMove {
  std::vector<std::array<int, 4>> tuples;
  int crossing_p = 0;               // new crossing on the tail side of b
  int crossing_q = 0;               // new crossing on the head side of b
  std::map<int, int> old_arcs;      // surviving old arc -> new arc
  std::array<int, 3> b_segments{};  // pieces of arc_b in strand order
  std::array<int, 3> b2_segments{}; // pieces of arc_b2 in strand order
};
RMove reidemeister2_detail(const Diagram& d, int arc_b, int arc_b2,
                           bool b_over = true, int region_id = 0);
std::pair<Diagram, std::pair<int, int>> reidemeister2(const Diagram& d,
                                                      int arc_b, int arc_b2,
                                                      bool b_over = true,
                                                      int region_id = 0);

// Replace crossing k by a rational twist region described by word
// [e1, ..., em]: leading entries nonzero and even, last entry odd.
struct TangleInsertion {
  std::vector<std::array<int, 4>> tuples;
  std::vector<int> tangle_crossings;  // 1-based ids in the new diagram
  std::map<int, int> region_map;      // old region id -> new region id
};
TangleInsertion insert_tangle_detail(const Diagram& d, int crossing_id,
                                     const std::vector<int>& word);
Diagram insert_tangle_diagram(const Diagram& d, int crossing_id,
                              const std::vector<int>& word);

}  // namespace pinchlab
