#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "apilab/bits.hpp"

namespace apilab {

enum class InterleaverKind { random, s_random };

/// Bijection on {0..k-1}. Output position i carries input position perm[i].
class Interleaver {
 public:
  /// Throws std::invalid_argument when `perm` is not a bijection.
  explicit Interleaver(std::vector<int> perm, InterleaverKind kind = InterleaverKind::random, int spread = 0);

  static Interleaver identity(int k);

  int size() const { return static_cast<int>(perm_.size()); }
  InterleaverKind kind() const { return kind_; }
  int spread() const { return spread_; }
  const std::vector<int>& permutation() const { return perm_; }
  const std::vector<int>& inverse() const { return inv_; }

  int operator[](int i) const { return perm_[static_cast<std::size_t>(i)]; }

  template <typename Seq>
  Seq interleave(const Seq& in) const {
    Seq out(in.size());
    for (std::size_t i = 0; i < perm_.size(); ++i) out[i] = in[perm_[i]];
    return out;
  }
  template <typename Seq>
  Seq deinterleave(const Seq& in) const {
    Seq out(in.size());
    for (std::size_t i = 0; i < perm_.size(); ++i) out[perm_[i]] = in[i];
    return out;
  }

  LlrSequence interleave(const LlrSequence& in) const;
  LlrSequence deinterleave(const LlrSequence& in) const;

  /// True when |perm[i] - perm[j]| > s for every 0 < |i - j| <= s.
  bool satisfies_spread(int s) const;

  /// One index per line.
  void save(const std::filesystem::path& path) const;
  static Interleaver load(const std::filesystem::path& path);

 private:
  std::vector<int> perm_;
  std::vector<int> inv_;
  InterleaverKind kind_;
  int spread_;
};

struct SRandomOptions {
  int spread = -1;          ///< -1 selects floor(sqrt(k/2))
  int max_restarts = 100;
};

int default_spread(int k);

/// Uniformly random permutation (Fisher-Yates), deterministic per seed.
Interleaver build_random_interleaver(int k, std::uint64_t seed);

/// S-random permutation: positions are filled in order, each from a shuffled
/// pool of unused indices, accepting the first candidate farther than S from
/// the previous S choices. At a dead end an unused index is swapped into an
/// earlier compatible slot; if that fails the pass restarts with fresh
/// randomness, and after max_restarts passes std::runtime_error is thrown.
Interleaver build_s_random_interleaver(int k, std::uint64_t seed, SRandomOptions options = {});

Interleaver build_interleaver(InterleaverKind kind, int k, std::uint64_t seed);

std::string to_string(InterleaverKind kind);
InterleaverKind parse_interleaver_kind(const std::string& name);

}  // namespace apilab
