#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "decker/diagram.hpp"

namespace decker {

/// K_t = (1 - t) K0 + t K1, vertex by vertex.
struct KnotFamily {
  PLKnot k0, k1;

  KnotFamily(PLKnot a, PLKnot b);
  PLKnot at(const Scalar& t) const;
};

enum class EventKind {
  QuadrisecantCrossing,
  TrisecantTangency,
  CuspBirthDeath,
  ExtremumHeightSwap,
  ChordTangency,
  BranchPassage,
  Unclassified,
};

std::string to_string(EventKind k);

enum class Confidence { None, Heuristic, PaperBacked };

std::string to_string(Confidence c);

/// One piece of evidence found by an exact detector inside a bracket.
struct Witness {
  EventKind kind = EventKind::Unclassified;
  std::vector<int> edges;
  std::vector<int> vertices;
  std::optional<Algebraic> height;
  std::optional<Direction> direction;
  std::optional<Scalar> t_exact;
};

/// Bracket [lo, hi] across which the canonical code changes.
struct RawBracket {
  Scalar lo, hi;
  CanonicalCode before, after;
  DiagramInvariants inv_before, inv_after;
  std::vector<Witness> witnesses;
};

struct IsotopyEvent {
  Scalar t_lo, t_hi;
  std::optional<Scalar> t_exact;
  EventKind kind = EventKind::Unclassified;
  std::vector<Witness> witnesses;
  std::string roseman_tag;  // empty when untagged
  Confidence confidence = Confidence::None;
  int cusp_delta = 0;
  /// Quadrisecant crossings: the height order of the four trisecants of the
  /// four edges is reversed across t*.
  bool order_reversed = false;
};

class AmbiguousBracket : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ResolutionTooCoarse : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InvalidFamily : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct ScanOptions {
  int resolution = 16;
  int bracket_bits = 40;  // stop bisecting below 2^-bracket_bits
};

std::vector<IsotopyEvent> scan_events(const KnotFamily& f, const ScanOptions& opt = {});

/// Runs the exact detectors on the family restricted to [lo, hi].
std::vector<Witness> detect(const KnotFamily& f, const Scalar& lo, const Scalar& hi);

/// Throws AmbiguousBracket when unrelated detectors fire together.
IsotopyEvent classify_event(const RawBracket& b);

struct StabilityWitness {
  int trial = 0;
  std::uint64_t seed = 0;
  PLKnot perturbed;
};

struct StabilityReport {
  int trials = 0;
  int unchanged = 0;
  std::vector<StabilityWitness> changed;
};

/// Trial i nudges K with seed `seed + i`.
StabilityReport perturb_stability(const PLKnot& k, std::optional<Scalar> magnitude, int trials, std::uint64_t seed);

struct PairingReport {
  int pairs = 0;
  std::vector<std::string> unpaired;
  bool ok() const { return unpaired.empty(); }
};

PairingReport antipodal_event_pairing(const std::vector<IsotopyEvent>& events);

// "decker-events/1" documents
std::string events_to_json(const std::vector<IsotopyEvent>& events);

}  // namespace decker
