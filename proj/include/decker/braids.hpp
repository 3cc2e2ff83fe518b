#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "decker/diagram.hpp"

namespace decker {

struct BraidLetter {
  int index = 1;  // generator s_index, 1 <= index < strands
  int sign = 1;
  friend bool operator==(const BraidLetter&, const BraidLetter&) = default;
};

struct BraidWord {
  int strands = 1;
  std::vector<BraidLetter> letters;

  /// Tokens `s<i>` and `s<i>^-1`, whitespace separated.
  static BraidWord parse(const std::string& text, int strands);
  std::string str() const;
  BraidWord operator*(const BraidWord& other) const;
  /// perm[m] is the slot where the strand starting at slot m ends (0-based).
  std::vector<int> permutation() const;
};

class BraidParseError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class DegenerateLayout : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct BraidLayout {
  std::vector<Point3> base;  // z ignored; empty means (m, m^2), m = 1..n

  static BraidLayout standard(int strands);
};

/// Each letter fills a slab of height 1; the two crossing strands pass on
/// either side of their midpoint, the side chosen by the sign. Strand m of the
/// tangle is the strand starting at slot m.
PLTangle braid_to_tangle(const BraidWord& w, const BraidLayout& layout = {});

AbstractDiagram alpha_tangle(const PLTangle& t);

struct EventLetter {
  std::array<int, 3> strands{};  // 1-based strand labels, increasing
  Algebraic height;
  Direction direction;
  friend bool operator==(const EventLetter& a, const EventLetter& b) {
    return a.strands == b.strands && a.height == b.height && a.direction == b.direction;
  }
};

struct EventWord {
  std::vector<EventLetter> letters;
  /// Tokens `a_{i,j,k}@height`.
  std::string str() const;
  friend bool operator==(const EventWord&, const EventWord&) = default;
};

EventWord collinearity_word(const PLTangle& t);

/// Letters of a word taken as the upper factor of a product: heights shifted
/// by `shift` and strand labels sent through the lower factor's permutation.
EventWord restack(const EventWord& w, const Scalar& shift, const std::vector<int>& lower_perm);

EventWord concat(const EventWord& a, const EventWord& b);

/// Chord directions of the boundary tags on one plane (0 bottom, 1 top), sorted.
std::vector<Direction> boundary_directions(const AbstractDiagram& d, int plane);

}  // namespace decker
