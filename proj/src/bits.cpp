#include "apilab/bits.hpp"

#include <random>
#include <stdexcept>

#include "apilab/rng.hpp"

namespace apilab {

std::size_t hamming_weight(std::span<const std::uint8_t> bits) {
  std::size_t w = 0;
  for (auto b : bits) w += (b != 0);
  return w;
}

std::size_t hamming_distance(std::span<const std::uint8_t> a, std::span<const std::uint8_t> b) {
  if (a.size() != b.size()) throw std::invalid_argument("hamming_distance: length mismatch");
  std::size_t d = 0;
  for (std::size_t i = 0; i < a.size(); ++i) d += ((a[i] != 0) != (b[i] != 0));
  return d;
}

BitSequence bitwise_xor(std::span<const std::uint8_t> a, std::span<const std::uint8_t> b) {
  if (a.size() != b.size()) throw std::invalid_argument("bitwise_xor: length mismatch");
  BitSequence out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = (a[i] ^ b[i]) & 1u;
  return out;
}

BitSequence hard_decision(const LlrSequence& llr) {
  BitSequence out(static_cast<std::size_t>(llr.size()));
  for (Eigen::Index i = 0; i < llr.size(); ++i) out[static_cast<std::size_t>(i)] = llr[i] < 0.0 ? 1 : 0;
  return out;
}

BitSequence random_bits(std::size_t k, std::uint64_t seed) {
  Rng rng(seed);
  std::bernoulli_distribution coin(0.5);
  BitSequence b(k);
  for (auto& x : b) x = coin(rng) ? 1 : 0;
  return b;
}

}  // namespace apilab
