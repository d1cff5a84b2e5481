#include "maus/protocol.hpp"

#include <cmath>
#include <functional>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace maus {

namespace {

constexpr int kElectronGround = 1;  // m_s = -1/2 in the descending ordering

Vector electron_basis_state(int e) {
  Vector v = Vector::Zero(2);
  v(e) = 1.0;
  return v;
}

Matrix electron_projector(int e) {
  Matrix p = Matrix::Zero(2, 2);
  p(e, e) = 1.0;
  return p;
}

int detection_rounds_max(HalfInteger spin) { return (spin.twice() - 1) / 2; }

// Parallel ladder-step pairs mapping |±(I-j)>_z -> |±(I-j+1)>_z.
std::vector<std::pair<int, int>> ladder_pairs(HalfInteger spin, int j) {
  const int dn = spin.dimension();
  return {{j - 1, j}, {dn - 1 - j, dn - j}};
}

PulseSegment global_rotation(double theta) {
  PulseSegment seg;
  seg.kind = SegmentKind::GlobalIx;
  seg.theta = theta;
  seg.duration = std::abs(theta);
  return seg;
}

PulseSegment nuclear_pulse(std::vector<std::pair<int, int>> pairs,
                           double theta, double phi) {
  PulseSegment seg;
  seg.kind = SegmentKind::NuclearTransition;
  seg.targets = std::move(pairs);
  seg.theta = theta;
  seg.phi = phi;
  seg.duration = theta;
  return seg;
}

PulseSegment electron_flip(std::vector<int> condition_levels) {
  PulseSegment seg;
  seg.kind = SegmentKind::ElectronConditional;
  seg.condition_levels = std::move(condition_levels);
  seg.theta = M_PI;
  seg.duration = M_PI;
  return seg;
}

PulseSegment measure_segment() {
  PulseSegment seg;
  seg.kind = SegmentKind::MeasureElectron;
  seg.duration = 0.0;
  return seg;
}

}  // namespace

std::string to_string(SegmentKind kind) {
  switch (kind) {
    case SegmentKind::NuclearTransition: return "nuclear-transition";
    case SegmentKind::ElectronConditional: return "electron-conditional";
    case SegmentKind::GlobalIx: return "global-Ix";
    case SegmentKind::Wait: return "wait";
    case SegmentKind::MeasureElectron: return "measure-electron";
  }
  return "unknown";
}

double Schedule::nuclear_pulse_angle() const {
  double total = 0.0;
  for (const auto& seg : segments) {
    if (seg.kind == SegmentKind::NuclearTransition) total += seg.theta;
  }
  return total;
}

double Schedule::total_duration() const {
  double total = 0.0;
  for (const auto& seg : segments) total += seg.duration / seg.omega;
  return total;
}

std::string Schedule::to_json() const {
  nlohmann::json doc = nlohmann::json::array();
  for (const auto& seg : segments) {
    nlohmann::json entry;
    entry["kind"] = to_string(seg.kind);
    entry["phi"] = seg.phi;
    entry["theta"] = seg.theta;
    entry["omega"] = seg.omega;
    entry["duration"] = seg.duration;
    if (!seg.targets.empty()) {
      nlohmann::json targets = nlohmann::json::array();
      for (const auto& [p, q] : seg.targets) targets.push_back({p, q});
      entry["targets"] = targets;
    }
    if (!seg.condition_levels.empty()) {
      entry["condition_levels"] = seg.condition_levels;
    }
    doc.push_back(entry);
  }
  return doc.dump(2);
}

Schedule build_encoding(HalfInteger spin, double theta, double phi) {
  if (spin.twice() < 3 || !spin.is_half_odd()) {
    throw std::invalid_argument("encoding requires half-odd spin >= 3/2");
  }
  if (!(theta >= 0.0 && theta <= M_PI) || !std::isfinite(phi)) {
    throw std::invalid_argument("invalid logical Bloch parameters");
  }
  const int mid = spin.dimension() / 2 - 1;  // index of |+1/2>_z
  Schedule sched;
  for (int j = 0; j < mid; ++j) {
    sched.segments.push_back(nuclear_pulse({{j, j + 1}}, M_PI, 0.0));
  }
  sched.segments.push_back(nuclear_pulse({{mid, mid + 1}}, theta, phi));
  for (int j = mid; j >= 1; --j) {
    sched.segments.push_back(nuclear_pulse(ladder_pairs(spin, j), M_PI, 0.0));
  }
  sched.segments.push_back(global_rotation(-M_PI / 2));
  return sched;
}

Schedule build_detection(HalfInteger spin, int round) {
  const int rounds_max = detection_rounds_max(spin);
  if (round < 1 || round > rounds_max) {
    throw std::invalid_argument("detection round out of range");
  }
  Schedule sched;
  if (round == 1) {
    sched.segments.push_back(global_rotation(M_PI / 2));
  }
  const int dn = spin.dimension();
  std::vector<int> levels;
  for (int idx = round; idx <= dn - 1 - round; ++idx) levels.push_back(idx);
  sched.segments.push_back(electron_flip(std::move(levels)));
  sched.segments.push_back(measure_segment());
  return sched;
}

Schedule build_recovery(HalfInteger spin, int detected_magnitude) {
  if (detected_magnitude < 0 ||
      detected_magnitude > detection_rounds_max(spin)) {
    throw std::invalid_argument("detected magnitude exceeds syndrome count");
  }
  Schedule sched;
  for (int j = detected_magnitude; j >= 1; --j) {
    sched.segments.push_back(nuclear_pulse(ladder_pairs(spin, j), M_PI, 0.0));
  }
  sched.segments.push_back(global_rotation(-M_PI / 2));
  return sched;
}

Schedule build_decoding(HalfInteger spin) {
  const int dn = spin.dimension();
  Schedule sched;
  sched.segments.push_back(global_rotation(M_PI / 2));
  sched.segments.push_back(electron_flip({dn - 1}));
  sched.segments.push_back(measure_segment());
  sched.segments.push_back(electron_flip({0}));
  sched.segments.push_back(measure_segment());
  return sched;
}

double quantize_wait(double t_requested, double quadrupole) {
  if (quadrupole <= 0) {
    throw std::invalid_argument("quadrupole frequency must be positive");
  }
  const double quantum = 4.0 * M_PI / quadrupole;
  const double n = std::max(1.0, std::floor(t_requested / quantum + 0.5));
  return n * quantum;
}

CycleSimulator::CycleSimulator(HalfInteger spin, const NoiseParams& noise,
                               ProtocolOptions options)
    : spin_(spin),
      noise_(noise),
      options_(std::move(options)),
      code_(maus_code(spin)),
      rounds_max_(detection_rounds_max(spin)),
      encode_(QuantumChannel::identity(1)),
      detect_rotation_(QuantumChannel::identity(1)),
      decode_(QuantumChannel::identity(1)) {
  const int dn = spin_.dimension();
  const int dc = 2 * dn;

  // --- noiseless segment unitaries (frame bookkeeping and ideal encode) ---
  const SpinOps ops = angular_momentum_ops(spin_);
  const auto nuclear_unitary = [&](const PulseSegment& seg) -> Matrix {
    switch (seg.kind) {
      case SegmentKind::GlobalIx: {
        return rotation(ops.x, seg.theta);
      }
      case SegmentKind::NuclearTransition: {
        const Matrix h = rwa_pulse_hamiltonian(dn, seg.targets, seg.phi,
                                               seg.omega);
        return rotation(h, seg.duration / seg.omega);
      }
      default:
        throw std::logic_error("not a nuclear segment");
    }
  };

  // Ideal encode: logical i -> codeword_i ⊗ |ground>.
  Matrix v_ideal = Matrix::Zero(dc, 2);
  for (int i = 0; i < 2; ++i) {
    v_ideal.col(i) =
        kron(Matrix(code_.encode.col(i)), Matrix(electron_basis_state(
                                              kElectronGround)));
  }

  if (options_.include_encoding_noise) {
    // Finite-duration tail: parallel-pi ladders plus the protecting rotation,
    // driven under noise. The logical-superposition preparation stays ideal;
    // the injection is calibrated so the noiseless limit equals v_ideal.
    Schedule tail;
    for (int j = dn / 2 - 1; j >= 1; --j) {
      tail.segments.push_back(nuclear_pulse(ladder_pairs(spin_, j), M_PI, 0));
    }
    tail.segments.push_back(global_rotation(-M_PI / 2));

    Matrix tail_unitary = Matrix::Identity(dn, dn);
    for (const auto& seg : tail.segments) {
      tail_unitary = nuclear_unitary(seg) * tail_unitary;
    }
    Matrix inject_nuc = tail_unitary.adjoint() * code_.encode;
    Matrix inject = Matrix::Zero(dc, 2);
    for (int i = 0; i < 2; ++i) {
      inject.col(i) = kron(Matrix(inject_nuc.col(i)),
                           Matrix(electron_basis_state(kElectronGround)));
    }
    QuantumChannel chain = QuantumChannel::from_unitary(inject);
    for (const auto& seg : tail.segments) {
      chain = chain.then(segment_channel(seg));
    }
    encode_ = chain;
  } else {
    encode_ = QuantumChannel::from_unitary(v_ideal);
  }

  // Detection rotation plus per-round ESR pulses.
  detect_rotation_ = segment_channel(global_rotation(M_PI / 2));
  for (int n = 1; n <= rounds_max_; ++n) {
    const Schedule frag = build_detection(spin_, n);
    const PulseSegment& esr = frag.segments[n == 1 ? 1 : 0];
    round_pulses_.push_back(segment_channel(esr));
  }

  for (int k = 0; k <= rounds_max_; ++k) {
    const Schedule frag = build_recovery(spin_, k);
    QuantumChannel chain = QuantumChannel::identity(dc);
    for (const auto& seg : frag.segments) {
      chain = chain.then(segment_channel(seg));
    }
    recovery_chains_.push_back(chain);
  }

  // Decode: read the codespace out as the logical qubit and trace out the
  // electron. Population that leaked out of the codespace is mapped to the
  // maximally mixed logical state so the map stays trace preserving.
  std::vector<Matrix> decode_kraus;
  for (int e = 0; e < 2; ++e) {
    Matrix k_e = Matrix::Zero(2, dc);
    for (int i = 0; i < 2; ++i) {
      k_e.row(i) = kron(Matrix(code_.encode.col(i)),
                        Matrix(electron_basis_state(e)))
                       .adjoint();
    }
    decode_kraus.push_back(std::move(k_e));
  }
  Eigen::HouseholderQR<Matrix> qr(code_.encode);
  const Matrix completion =
      Matrix(qr.householderQ()).rightCols(dn - 2);
  for (int j = 0; j < dn - 2; ++j) {
    for (int e = 0; e < 2; ++e) {
      const Matrix bra = kron(Matrix(completion.col(j)),
                              Matrix(electron_basis_state(e)))
                             .adjoint();
      for (int i = 0; i < 2; ++i) {
        Matrix k = Matrix::Zero(2, dc);
        k.row(i) = bra / std::sqrt(2.0);
        decode_kraus.push_back(std::move(k));
      }
    }
  }
  decode_ = QuantumChannel::from_kraus(decode_kraus);

  // --- frame corrections: the noiseless cycle applied to the clean magnitude
  // k jump is a fixed logical unitary B_k; decode applies B_k^dagger. ---
  const Matrix u_detect = rotation(ops.x, M_PI / 2);
  for (int k = 0; k <= rounds_max_; ++k) {
    Matrix state = Matrix::Zero(dc, 2);  // columns: branch images of |i>_L
    for (int i = 0; i < 2; ++i) {
      Vector nuc = code_.recovery_unitaries[k] * code_.encode.col(i);
      state.col(i) = kron(Matrix(nuc),
                          Matrix(electron_basis_state(kElectronGround)));
    }
    // detection rotation
    state = kron(u_detect, Matrix::Identity(2, 2)) * state;
    // measurement rounds (deterministic for a clean jump)
    int electron = kElectronGround;
    const int rounds = (k == 0) ? 1 : std::min(k + 1, rounds_max_);
    for (int n = 1; n <= rounds; ++n) {
      const Schedule frag = build_detection(spin_, n);
      const PulseSegment& esr = frag.segments[n == 1 ? 1 : 0];
      Matrix h = Matrix::Zero(dc, dc);
      for (int level : esr.condition_levels) {
        Matrix p = Matrix::Zero(dn, dn);
        p(level, level) = 1.0;
        h += kron(p, Matrix(-0.5 * esr.omega * pauli_x()));
      }
      state = rotation(h, esr.duration / esr.omega) * state;
      if (n <= k) electron = 1 - electron;
      const Matrix proj =
          kron(Matrix::Identity(dn, dn), electron_projector(electron));
      state = proj * state;
    }
    // recovery chain, noiseless
    const Schedule frag = build_recovery(spin_, k);
    for (const auto& seg : frag.segments) {
      state = kron(nuclear_unitary(seg), Matrix::Identity(2, 2)) * state;
    }
    // decode against the codewords with the branch's electron state
    Matrix b = Matrix::Zero(2, 2);
    for (int i = 0; i < 2; ++i) {
      for (int a = 0; a < 2; ++a) {
        for (int e = 0; e < 2; ++e) {
          const Vector bra = kron(Matrix(code_.encode.col(a)),
                                  Matrix(electron_basis_state(e)));
          b(a, i) += bra.dot(Vector(state.col(i)));
        }
      }
    }
    if (!is_unitary(b, 1e-9)) {
      throw std::logic_error("frame extraction produced a non-unitary map");
    }
    frame_corrections_.push_back(b.adjoint());
  }
}

QuantumChannel CycleSimulator::segment_channel(
    const PulseSegment& segment) const {
  const int dn = spin_.dimension();
  const Matrix generator = dephasing_generator(spin_, noise_);
  Matrix h;
  switch (segment.kind) {
    case SegmentKind::GlobalIx: {
      const SpinOps ops = angular_momentum_ops(spin_);
      const double sign = segment.theta >= 0 ? 1.0 : -1.0;
      h = compose_systems(Matrix(sign * segment.omega * ops.x),
                          Matrix::Identity(2, 2));
      break;
    }
    case SegmentKind::NuclearTransition: {
      h = compose_systems(rwa_pulse_hamiltonian(dn, segment.targets,
                                                segment.phi, segment.omega),
                          Matrix::Identity(2, 2));
      break;
    }
    case SegmentKind::ElectronConditional: {
      h = Matrix::Zero(2 * dn, 2 * dn);
      const Matrix drive =
          -0.5 * segment.omega *
          (pauli_x() * std::cos(segment.phi) +
           pauli_y() * std::sin(segment.phi));
      for (int level : segment.condition_levels) {
        Matrix p = Matrix::Zero(dn, dn);
        p(level, level) = 1.0;
        h += kron(p, drive);
      }
      break;
    }
    default:
      throw std::invalid_argument("segment has no Hamiltonian");
  }
  return channel_of_segment(h, generator, segment.duration / segment.omega);
}

CycleResult CycleSimulator::run(double t_wait) const {
  if (t_wait < 0) throw std::invalid_argument("negative wait time");
  const int dn = spin_.dimension();
  const int dc = 2 * dn;

  double t = t_wait;
  if (options_.quadrupole_over_omega > 0) {
    t = quantize_wait(t_wait, options_.quadrupole_over_omega);
  }

  QuantumChannel trunk =
      encode_.then(free_evolution_channel(spin_, noise_, t));
  if (options_.injected_nuclear_error) {
    trunk = trunk.then(QuantumChannel::from_unitary(
        compose_systems(*options_.injected_nuclear_error,
                        Matrix::Identity(2, 2))));
  }
  trunk = trunk.then(detect_rotation_);

  CycleResult result{QuantumChannel::from_superop(Matrix::Zero(4, 4), 2, 2),
                     {}, t};

  const auto finalize = [&](const QuantumChannel& branch, int k, int rounds,
                            int electron) {
    QuantumChannel logical =
        branch.then(recovery_chains_[k])
            .then(decode_)
            .then(QuantumChannel::from_unitary(frame_corrections_[k]));
    const double prob = logical.choi().trace().real() / 2.0;
    result.branches.push_back(
        {k, rounds, prob, k % 2, electron != kElectronGround});
    result.logical = result.logical + logical;
  };

  std::function<void(const QuantumChannel&, int, int)> descend =
      [&](const QuantumChannel& state, int round, int electron) {
        const QuantumChannel pulsed =
            state.then(round_pulses_[round - 1]);
        const Matrix p_same =
            kron(Matrix::Identity(dn, dn), electron_projector(electron));
        const Matrix p_flip =
            kron(Matrix::Identity(dn, dn), electron_projector(1 - electron));
        const QuantumChannel unflipped =
            pulsed.then(QuantumChannel::branch_projection(p_same));
        finalize(unflipped, round - 1, round, electron);
        const QuantumChannel flipped =
            pulsed.then(QuantumChannel::branch_projection(p_flip));
        if (round == rounds_max_) {
          finalize(flipped, round, round, 1 - electron);
        } else {
          descend(flipped, round + 1, 1 - electron);
        }
      };
  descend(trunk, 1, kElectronGround);

  result.logical = QuantumChannel::from_superop(result.logical.superop(), 2,
                                                2, false);
  return result;
}

CycleResult run_cycle(HalfInteger spin, const NoiseParams& noise,
                      double t_wait, const ProtocolOptions& options) {
  return CycleSimulator(spin, noise, options).run(t_wait);
}

DecodeProbabilities decoding_probabilities(HalfInteger spin,
                                           const Vector& logical_state) {
  if (logical_state.size() != 2) {
    throw std::invalid_argument("logical state must be two-dimensional");
  }
  const CodeSpec code = maus_code(spin);
  Vector psi = code.encode * logical_state;
  psi.normalize();
  const SpinOps ops = angular_momentum_ops(spin);
  const Vector rotated = rotation(ops.x, M_PI / 2) * psi;
  const int dn = spin.dimension();
  DecodeProbabilities probs{};
  probs.flip_first = std::norm(rotated(dn - 1));   // |-I>_z
  probs.flip_second = std::norm(rotated(0));       // |I>_z
  probs.none = 1.0 - probs.flip_first - probs.flip_second;
  return probs;
}

}  // namespace maus
