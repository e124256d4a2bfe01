#pragma once

#include <cstdint>
#include <memory>

#include "apilab/bits.hpp"
#include "apilab/convolutional.hpp"
#include "apilab/interleaver.hpp"
#include "apilab/spectrum.hpp"

namespace apilab {

/// Two identical recursive systematic constituents in parallel. Encoder 1 is
/// terminated with memory() tail steps; encoder 2 is left open.
///
/// Transmitted layout, per information index i: systematic bit, then parity.
/// Punctured (rate 1/2): parity 1 on even i, parity 2 on odd i. Unpunctured
/// (rate 1/3): parity 1 then parity 2. Encoder 1's tail follows as
/// (systematic, parity 1) pairs.
struct TurboSpec {
  CodeSpec constituent = codes::turbo_constituent;
  std::shared_ptr<const Interleaver> interleaver;
  bool punctured = true;

  TurboSpec(std::shared_ptr<const Interleaver> il, bool punct, CodeSpec code = codes::turbo_constituent);

  int k() const { return interleaver->size(); }
  int tail() const { return constituent.tail_length(); }
  /// Nominal rate, excluding the tail.
  double rate() const { return punctured ? 0.5 : 1.0 / 3.0; }
  std::size_t codeword_length() const;

  bool keeps_parity1(int i) const { return !punctured || i % 2 == 0; }
  bool keeps_parity2(int i) const { return !punctured || i % 2 == 1; }
};

BitSequence turbo_encode(const TurboSpec& spec, const BitSequence& info);

/// Channel LLRs split per stream; punctured positions carry 0.
struct TurboChannelLlrs {
  LlrSequence systematic;  ///< k + tail
  LlrSequence parity1;     ///< k + tail
  LlrSequence parity2;     ///< k
};
TurboChannelLlrs depuncture(const TurboSpec& spec, const LlrSequence& received);

struct BcjrOutput {
  LlrSequence posterior;  ///< k entries
  LlrSequence extrinsic;  ///< posterior - apriori - systematic channel LLR (systematic codes)
};

/// Log-MAP BCJR over one constituent trellis. `first` and `second` are the
/// channel LLRs of the two encoder outputs per step (k + tail entries when
/// terminated, else k); `apriori` has k entries.
BcjrOutput bcjr_decode(const Trellis& trellis, const LlrSequence& first, const LlrSequence& second,
                       const LlrSequence& apriori, bool terminated);

/// Convenience form with the convolutional encoder's interleaved layout.
BcjrOutput bcjr_decode(const CodeSpec& spec, const LlrSequence& channel_llrs, const LlrSequence& apriori_total,
                       bool terminated = true);

inline constexpr double extrinsic_clamp = 50.0;

/// Extrinsic exchange state; persists across calls so a caller can resume
/// decoding with an updated external prior.
struct DecoderState {
  LlrSequence extrinsic1;  ///< from constituent 1, natural order
  LlrSequence extrinsic2;  ///< from constituent 2, deinterleaved
  LlrSequence posterior;
  BitSequence decision;
  int iteration = 0;
};

struct TurboDecodeResult {
  BitSequence bits;
  int iterations = 0;  ///< iterations run in this call
  bool converged = false;
};

class TurboDecoder {
 public:
  explicit TurboDecoder(const TurboSpec& spec);

  void reset();
  const DecoderState& state() const { return state_; }

  /// Runs up to max_iters iterations. `external_api` (k entries) is added to
  /// both constituents' prior as a persistent term and removed again from each
  /// extrinsic, so it is never exchanged. Stops early once the hard decisions
  /// of both half-iterations match those of the previous iteration.
  TurboDecodeResult run(const TurboChannelLlrs& channel, const LlrSequence& external_api, int max_iters,
                        bool early_exit = true);

 private:
  TurboSpec spec_;
  Trellis trellis_;
  DecoderState state_;
};

/// One-shot decode of a received (punctured) frame.
TurboDecodeResult turbo_decode(const TurboSpec& spec, const LlrSequence& channel_llrs, const LlrSequence& external_api,
                               int max_iters, bool early_exit = true);

/// Exact weight of the turbo codeword produced by ones at `positions`
/// (tail included). Returns cap + 1 as soon as the weight exceeds `cap`.
int turbo_codeword_weight(const TurboSpec& spec, std::vector<int> positions, int cap);

/// Low-weight part of the turbo code's input-output weight enumerator for a
/// fixed interleaver: single detours (w <= w_cap) seen from either
/// constituent, plus, when w_cap >= 4, patterns made of two weight-2 detours
/// in both constituents. Records hold exact codeword weights <= d_cap.
WeightSpectrum enumerate_turbo_floor_spectrum(const TurboSpec& spec, int w_cap, int d_cap);

}  // namespace apilab
