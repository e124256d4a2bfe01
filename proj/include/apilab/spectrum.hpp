#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <vector>

namespace apilab {

/// One entry of an input-output weight enumerator: `beta` error events with
/// information weight `w` and codeword weight `d`.
struct SpectrumRecord {
  int w = 0;
  int d = 0;
  double beta = 0.0;

  friend bool operator==(const SpectrumRecord&, const SpectrumRecord&) = default;
};

/// Records unique by (w, d), sorted by d then w.
class WeightSpectrum {
 public:
  WeightSpectrum() = default;
  explicit WeightSpectrum(std::vector<SpectrumRecord> records) : records_(std::move(records)) { normalize(); }

  /// Adds multiplicity to (w, d), merging with an existing record.
  void add(int w, int d, double beta) {
    for (auto& r : records_)
      if (r.w == w && r.d == d) {
        r.beta += beta;
        return;
      }
    records_.push_back({w, d, beta});
    normalize();
  }

  const std::vector<SpectrumRecord>& records() const { return records_; }
  bool empty() const { return records_.empty(); }
  std::size_t size() const { return records_.size(); }

  std::optional<int> min_distance() const {
    if (records_.empty()) return std::nullopt;
    return records_.front().d;
  }

  /// Minimum d over records with the given information weight.
  std::optional<int> min_distance_for_weight(int w) const {
    for (const auto& r : records_)
      if (r.w == w) return r.d;
    return std::nullopt;
  }

  double multiplicity(int w, int d) const {
    for (const auto& r : records_)
      if (r.w == w && r.d == d) return r.beta;
    return 0.0;
  }

 private:
  void normalize() {
    std::sort(records_.begin(), records_.end(),
              [](const SpectrumRecord& a, const SpectrumRecord& b) { return a.d != b.d ? a.d < b.d : a.w < b.w; });
  }
  std::vector<SpectrumRecord> records_;
};

}  // namespace apilab
