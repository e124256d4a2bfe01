#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "apilab/bits.hpp"
#include "apilab/spectrum.hpp"

namespace apilab {

/// Rate-1/2 binary convolutional code. Polynomials are bitmasks with bit i
/// holding the coefficient of D^i (so D^3+D^2+1 is 0b1101). `feedback == 1`
/// means feedforward; otherwise the code is recursive and needs bit 0 set.
struct CodeSpec {
  unsigned g1 = 0;
  unsigned g2 = 0;
  unsigned feedback = 1;
  int constraint_length = 0;

  bool recursive() const { return feedback != 1u; }
  bool systematic() const { return g1 == feedback; }
  int memory() const { return constraint_length - 1; }
  int tail_length() const { return memory(); }

  /// Throws std::invalid_argument on degree or feedback violations.
  void validate() const;

  friend bool operator==(const CodeSpec&, const CodeSpec&) = default;
};

namespace codes {
/// Maximum free-distance K=4 feedforward code: G1 = D^3+D^2+1, G2 = D^3+D^2+D+1.
inline constexpr CodeSpec nonrecursive_k4{0b1101, 0b1111, 0b1, 4};
/// K=4 recursive code: G1 = D^3+D+1, G2 = D^3+D^2+D+1, H = D^3+D^2+1.
inline constexpr CodeSpec recursive_k4{0b1011, 0b1111, 0b1101, 4};
/// Turbo constituent RSC: G1 = H = D^3+D+1 (systematic), G2 = D^3+D^2+1.
inline constexpr CodeSpec turbo_constituent{0b1011, 0b1101, 0b1011, 4};
}  // namespace codes

/// Register-state realization of a CodeSpec. State bit i-1 holds a_{t-i},
/// where a_t = u_t xor (feedback taps on past register bits).
class Trellis {
 public:
  explicit Trellis(const CodeSpec& spec);

  int num_states() const { return num_states_; }
  const CodeSpec& spec() const { return spec_; }

  int next_state(int state, int input) const { return next_[state][input]; }
  /// Output pair packed as bit0 = first output, bit1 = second output.
  int output(int state, int input) const { return out_[state][input]; }
  /// Input that shifts a zero into the register (drives toward state 0).
  int tail_input(int state) const { return tail_[state]; }

  struct Branch {
    int from;
    int input;
  };
  /// The two transitions entering `state`.
  const std::array<Branch, 2>& predecessors(int state) const { return prev_[state]; }

 private:
  CodeSpec spec_;
  int num_states_ = 0;
  std::vector<std::array<int, 2>> next_;
  std::vector<std::array<int, 2>> out_;
  std::vector<int> tail_;
  std::vector<std::array<Branch, 2>> prev_;
};

/// Encodes `info`; output is interleaved (c1_0, c2_0, c1_1, c2_1, ...).
/// With `terminate`, memory() tail steps return the encoder to state 0.
BitSequence encode(const CodeSpec& spec, const BitSequence& info, bool terminate = true);

/// Exact multiplicities of single detours from state 0 back to state 0 with
/// d <= d_max and w <= w_max.
WeightSpectrum enumerate_spectrum(const CodeSpec& spec, int d_max, int w_max);

/// Spectrum used for union bounds: d <= d_free + 30, w <= 40. Against a much
/// wider enumeration the bound changes by < 1e-3 from 3.5 dB up; below about
/// 3 dB the union bound itself diverges and no finite truncation settles.
WeightSpectrum bound_spectrum(const CodeSpec& spec);

struct FreeDistance {
  int d_free = 0;
  int w_at_dfree = 0;
};
FreeDistance free_distance(const CodeSpec& spec);

/// Minimum output weight over single detours driven by weight-w inputs.
int min_distance_for_input_weight(const CodeSpec& spec, int w);

/// Maximum-metric path for the metric sum_j Lc_j (+-1)/2 + sum_i La_i (+-1)/2
/// over a terminated trellis. `channel_llrs` has 2*(k + memory) entries and
/// `apriori` has k entries (all zero for classical ML decoding).
/// Equal-metric merges keep the branch carrying input 0, then the lower state.
BitSequence viterbi_decode_api(const CodeSpec& spec, const LlrSequence& channel_llrs, const LlrSequence& apriori);

std::string to_string(const CodeSpec& spec);

}  // namespace apilab
