#include "decker/braids.hpp"

#include <algorithm>
#include <numeric>
#include <regex>
#include <sstream>

namespace decker {

namespace {

Scalar cross2(const Point3& o, const Point3& a, const Point3& b) {
  return (a.x - o.x) * (b.y - o.y) - (a.y - o.y) * (b.x - o.x);
}

// p on the closed planar segment [a, b]
bool on_segment(const Point3& p, const Point3& a, const Point3& b) {
  if (cross2(a, b, p) != 0) return false;
  return (p.x - a.x) * (p.x - b.x) <= 0 && (p.y - a.y) * (p.y - b.y) <= 0;
}

Point3 at_height(const Point3& p, const Scalar& z) { return {p.x, p.y, z}; }

}  // namespace

BraidWord BraidWord::parse(const std::string& text, int strands) {
  if (strands < 1) throw BraidParseError("strand count must be at least 1");
  static const std::regex token(R"(s([0-9]+)(\^(-?1|\+1))?)");
  BraidWord w;
  w.strands = strands;
  std::istringstream in(text);
  std::string tok;
  while (in >> tok) {
    std::smatch m;
    if (!std::regex_match(tok, m, token)) throw BraidParseError("bad braid token '" + tok + "'");
    int i = 0;
    try {
      i = std::stoi(m[1].str());
    } catch (const std::out_of_range&) {
      throw BraidParseError("generator index out of range in '" + tok + "'");
    }
    if (i < 1 || i >= strands)
      throw BraidParseError("generator s" + std::to_string(i) + " needs 1 <= i < " + std::to_string(strands));
    w.letters.push_back({i, m[3].str() == "-1" ? -1 : 1});
  }
  return w;
}

std::string BraidWord::str() const {
  std::string out;
  for (const auto& l : letters) {
    if (!out.empty()) out += ' ';
    out += "s" + std::to_string(l.index) + (l.sign < 0 ? "^-1" : "");
  }
  return out;
}

BraidWord BraidWord::operator*(const BraidWord& other) const {
  if (strands != other.strands) throw std::invalid_argument("braid words on different strand counts");
  BraidWord w = *this;
  w.letters.insert(w.letters.end(), other.letters.begin(), other.letters.end());
  return w;
}

std::vector<int> BraidWord::permutation() const {
  std::vector<int> at(static_cast<size_t>(strands));  // at[slot] = starting slot of its strand
  std::iota(at.begin(), at.end(), 0);
  for (const auto& l : letters) std::swap(at[static_cast<size_t>(l.index - 1)], at[static_cast<size_t>(l.index)]);
  std::vector<int> perm(at.size());
  for (size_t s = 0; s < at.size(); ++s) perm[static_cast<size_t>(at[s])] = static_cast<int>(s);
  return perm;
}

BraidLayout BraidLayout::standard(int strands) {
  BraidLayout l;
  for (int m = 1; m <= strands; ++m) l.base.push_back({m, m * m, 0});
  return l;
}

PLTangle braid_to_tangle(const BraidWord& w, const BraidLayout& layout) {
  const int n = w.strands;
  if (n < 1) throw std::invalid_argument("braid needs at least one strand");
  std::vector<Point3> base = layout.base.empty() ? BraidLayout::standard(n).base : layout.base;
  if (static_cast<int>(base.size()) != n) throw DegenerateLayout("layout has the wrong number of base positions");
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b) {
      if (base[a].x == base[b].x && base[a].y == base[b].y) throw DegenerateLayout("repeated base position");
      for (int c = b + 1; c < n; ++c)
        if (cross2(base[a], base[b], base[c]) == 0) throw DegenerateLayout("three collinear base positions");
    }

  const int len = static_cast<int>(w.letters.size());
  PLTangle t;
  t.height = std::max(len, 1);
  std::vector<int> at(static_cast<size_t>(n));  // at[slot] = strand
  std::iota(at.begin(), at.end(), 0);
  t.strands.resize(static_cast<size_t>(n));
  for (int s = 0; s < n; ++s) t.strands[s].push_back(at_height(base[s], 0));

  for (int k = 0; k < len; ++k) {
    const auto& l = w.letters[static_cast<size_t>(k)];
    if (l.index < 1 || l.index >= n) throw std::invalid_argument("generator index out of range");
    const int i = l.index - 1;
    const Point3 &p = base[i], &q = base[i + 1];
    Point3 mid{(p.x + q.x) / 2, (p.y + q.y) / 2, 0};
    // quarter of the perpendicular to q - p
    Scalar nx = -(q.y - p.y) / 4, ny = (q.x - p.x) / 4;
    Point3 a{mid.x + l.sign * nx, mid.y + l.sign * ny, 0};
    Point3 b{mid.x - l.sign * nx, mid.y - l.sign * ny, 0};
    for (int s = 0; s < n; ++s) {
      if (s == i || s == i + 1) continue;
      if (on_segment(base[s], p, a) || on_segment(base[s], a, q) || on_segment(base[s], q, b) ||
          on_segment(base[s], b, p))
        throw DegenerateLayout("crossing detour meets base position " + std::to_string(s + 1));
    }
    Scalar zm = Scalar(2 * k + 1, 2), z1 = k + 1;
    auto& lower = t.strands[static_cast<size_t>(at[i])];
    auto& upper = t.strands[static_cast<size_t>(at[i + 1])];
    lower.push_back(at_height(a, zm));
    lower.push_back(at_height(q, z1));
    upper.push_back(at_height(b, zm));
    upper.push_back(at_height(p, z1));
    std::swap(at[i], at[i + 1]);
    for (int s = 0; s < n; ++s)
      if (s != i && s != i + 1) t.strands[static_cast<size_t>(at[s])].push_back(at_height(base[s], z1));
  }
  if (len == 0)
    for (int s = 0; s < n; ++s) t.strands[s].push_back(at_height(base[s], 1));
  return t;
}

AbstractDiagram alpha_tangle(const PLTangle& t) { return assemble_diagram(t); }

std::string EventWord::str() const {
  std::string out;
  for (const auto& l : letters) {
    if (!out.empty()) out += ' ';
    out += "a_{" + std::to_string(l.strands[0]) + "," + std::to_string(l.strands[1]) + "," +
           std::to_string(l.strands[2]) + "}@" + l.height.str();
  }
  return out;
}

EventWord collinearity_word(const PLTangle& t) {
  EdgeComplex k(t);
  EventWord w;
  for (const auto& e : analyze_secants(k).events) {
    EventLetter l;
    for (int r = 0; r < 3; ++r) l.strands[r] = k.edge(e.edges[r]).strand + 1;
    std::sort(l.strands.begin(), l.strands.end());
    if (l.strands[0] == l.strands[1] || l.strands[1] == l.strands[2])
      throw std::invalid_argument("collinearity_word needs z-monotone strands");
    l.height = e.height;
    l.direction = e.direction;
    w.letters.push_back(std::move(l));
  }
  std::stable_sort(w.letters.begin(), w.letters.end(),
                   [](const EventLetter& a, const EventLetter& b) { return a.height < b.height; });
  return w;
}

EventWord restack(const EventWord& w, const Scalar& shift, const std::vector<int>& lower_perm) {
  std::vector<int> inv(lower_perm.size());
  for (size_t s = 0; s < lower_perm.size(); ++s) inv[static_cast<size_t>(lower_perm[s])] = static_cast<int>(s);
  EventWord out;
  for (auto l : w.letters) {
    for (auto& s : l.strands) s = inv.at(static_cast<size_t>(s - 1)) + 1;
    std::sort(l.strands.begin(), l.strands.end());
    l.height = l.height + Algebraic(shift);
    out.letters.push_back(std::move(l));
  }
  return out;
}

EventWord concat(const EventWord& a, const EventWord& b) {
  EventWord out = a;
  out.letters.insert(out.letters.end(), b.letters.begin(), b.letters.end());
  return out;
}

std::vector<Direction> boundary_directions(const AbstractDiagram& d, int plane) {
  std::vector<Direction> out;
  for (const auto& b : d.boundary)
    if (b.plane == plane) out.push_back(b.direction);
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace decker
