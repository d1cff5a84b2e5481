#ifndef MAUS_PROTOCOL_HPP
#define MAUS_PROTOCOL_HPP

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "maus/channel.hpp"
#include "maus/codes.hpp"
#include "maus/dynamics.hpp"

namespace maus {

enum class SegmentKind {
  NuclearTransition,
  ElectronConditional,
  GlobalIx,
  Wait,
  MeasureElectron,
};

std::string to_string(SegmentKind kind);

/// One entry of a pulse schedule. Nuclear pulses carry z-basis level-index
/// pairs; electron-conditional pulses carry the conditioning nuclear levels.
struct PulseSegment {
  SegmentKind kind;
  std::vector<std::pair<int, int>> targets;
  std::vector<int> condition_levels;
  double phi = 0.0;
  double theta = 0.0;
  double omega = 1.0;
  double duration = 0.0;
};

struct Schedule {
  std::vector<PulseSegment> segments;

  /// Total rotation angle of nuclear-transition pulses (global rotations and
  /// electron pulses excluded).
  double nuclear_pulse_angle() const;
  double total_duration() const;
  std::string to_json() const;
};

/// Encoding sequence for logical Bloch angles (theta, phi): ladder pulses to
/// the central z pair, the logical superposition pulse, parallel-pi ladders
/// to the extremal z pair, then the global rotation into the protected basis.
Schedule build_encoding(HalfInteger spin, double theta, double phi);

/// Detection fragment for round n: round 1 reverses the protecting rotation,
/// then flips the electron conditioned on |m_z| <= I - n and measures.
Schedule build_detection(HalfInteger spin, int round);

/// Recovery fragment for detected magnitude k: k parallel-pi ladder steps
/// back to the extremal z pair, then the rotation into the protected basis.
/// For k = 0 only the rotation is emitted.
Schedule build_recovery(HalfInteger spin, int detected_magnitude);

/// Decoding fragment: rotation to the z basis, then electron flips
/// conditioned on |-I>_z and |I>_z, each followed by a measurement.
Schedule build_decoding(HalfInteger spin);

/// Nearest positive integer multiple of 4*pi/Q; ties round up.
double quantize_wait(double t_requested, double quadrupole);

struct ProtocolOptions {
  /// Apply the finite-duration encoding tail (parallel-pi ladder plus
  /// rotation) under noise instead of an ideal instantaneous encoding.
  bool include_encoding_noise = false;
  /// When positive, wait times are quantized to multiples of 4*pi/Q with Q
  /// expressed in units of Omega.
  double quadrupole_over_omega = 0.0;
  /// Optional unitary error on the nuclear space injected after the wait.
  std::optional<Matrix> injected_nuclear_error;
};

struct BranchStat {
  int syndrome;      // detected error magnitude k
  int rounds;        // measurement rounds spent in this branch
  double probability;
  int parity;        // k mod 2
  bool electron_flipped_at_end;
};

struct CycleResult {
  QuantumChannel logical;
  std::vector<BranchStat> branches;
  double quantized_wait;
};

/// Precomputed finite-time correction cycle for one (spin, noise) point;
/// wait-time-independent segment channels are built once.
class CycleSimulator {
 public:
  CycleSimulator(HalfInteger spin, const NoiseParams& noise,
                 ProtocolOptions options = {});

  CycleResult run(double t_wait) const;

  const CodeSpec& code() const { return code_; }
  /// Logical frame correction applied at decode for detected magnitude k.
  const Matrix& frame_correction(int k) const { return frame_corrections_[k]; }

 private:
  QuantumChannel segment_channel(const PulseSegment& segment) const;

  HalfInteger spin_;
  NoiseParams noise_;
  ProtocolOptions options_;
  CodeSpec code_;
  int rounds_max_;

  QuantumChannel encode_;          // 2 -> composite
  QuantumChannel detect_rotation_; // protected -> z basis, with ESR pulse
  std::vector<QuantumChannel> round_pulses_;     // ESR pulse per round
  std::vector<QuantumChannel> recovery_chains_;  // per detected magnitude
  QuantumChannel decode_;          // composite -> 2 (projection + trace out)
  std::vector<Matrix> frame_corrections_;
};

/// Single correction cycle as a deterministic logical channel plus branch
/// statistics (exact branch enumeration over measurement outcomes).
CycleResult run_cycle(HalfInteger spin, const NoiseParams& noise,
                      double t_wait, const ProtocolOptions& options = {});

struct DecodeProbabilities {
  double flip_first;
  double flip_second;
  double none;

  /// Outcome interpretation under the tracked frame parity: odd parity swaps
  /// the two flip labels.
  double read_zero(int parity) const {
    return parity % 2 == 0 ? flip_second : flip_first;
  }
  double read_one(int parity) const {
    return parity % 2 == 0 ? flip_first : flip_second;
  }
};

/// Noiseless readout probabilities of the decoding fragment for a logical
/// state stored in the protected basis.
DecodeProbabilities decoding_probabilities(HalfInteger spin,
                                           const Vector& logical_state);

}  // namespace maus

#endif  // MAUS_PROTOCOL_HPP
