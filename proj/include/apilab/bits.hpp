#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include <Eigen/Dense>

namespace apilab {

/// Ordered binary symbols, one byte per bit (values 0 or 1).
using BitSequence = std::vector<std::uint8_t>;

/// Per-bit log-likelihood ratios ln(Pr(bit=0)/Pr(bit=1)).
using LlrSequence = Eigen::VectorXd;

std::size_t hamming_weight(std::span<const std::uint8_t> bits);
std::size_t hamming_distance(std::span<const std::uint8_t> a, std::span<const std::uint8_t> b);
BitSequence bitwise_xor(std::span<const std::uint8_t> a, std::span<const std::uint8_t> b);

/// Sign decision: LLR >= 0 maps to bit 0.
BitSequence hard_decision(const LlrSequence& llr);

/// k independent fair bits, deterministic per seed.
BitSequence random_bits(std::size_t k, std::uint64_t seed);

inline double bit_sign(std::uint8_t bit) { return bit ? -1.0 : 1.0; }

}  // namespace apilab
