#include "apilab/convolutional.hpp"

#include <bit>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace apilab {

namespace {

int parity(unsigned v) { return std::popcount(v) & 1; }

}  // namespace

void CodeSpec::validate() const {
  if (constraint_length < 2 || constraint_length > 16)
    throw std::invalid_argument("CodeSpec: constraint length must be in [2, 16]");
  const unsigned limit = 1u << constraint_length;
  if (g1 >= limit || g2 >= limit || feedback >= limit)
    throw std::invalid_argument("CodeSpec: polynomial degree must be below the constraint length");
  if ((feedback & 1u) == 0) throw std::invalid_argument("CodeSpec: feedback polynomial needs h0 = 1");
  if (g1 == 0 || g2 == 0) throw std::invalid_argument("CodeSpec: generator polynomials must be non-zero");
}

std::string to_string(const CodeSpec& spec) {
  std::ostringstream os;
  os << "K=" << spec.constraint_length << " g1=0" << std::oct << spec.g1 << " g2=0" << spec.g2 << " h=0"
     << spec.feedback;
  return os.str();
}

Trellis::Trellis(const CodeSpec& spec) : spec_(spec) {
  spec.validate();
  num_states_ = 1 << spec.memory();
  const unsigned mask = static_cast<unsigned>(num_states_ - 1);
  next_.resize(num_states_);
  out_.resize(num_states_);
  tail_.resize(num_states_);
  prev_.resize(num_states_);
  std::vector<int> fill(num_states_, 0);
  for (int s = 0; s < num_states_; ++s) {
    const int fb = parity((spec.feedback >> 1) & static_cast<unsigned>(s));
    tail_[s] = fb;
    for (int u = 0; u < 2; ++u) {
      const unsigned a = static_cast<unsigned>(u ^ fb);
      const unsigned reg = (static_cast<unsigned>(s) << 1) | a;
      next_[s][u] = static_cast<int>(reg & mask);
      out_[s][u] = parity(spec.g1 & reg) | (parity(spec.g2 & reg) << 1);
      const int ns = next_[s][u];
      prev_[ns][fill[ns]++] = Branch{s, u};
    }
  }
}

BitSequence encode(const CodeSpec& spec, const BitSequence& info, bool terminate) {
  const Trellis trellis(spec);
  const std::size_t steps = info.size() + (terminate ? static_cast<std::size_t>(spec.tail_length()) : 0);
  BitSequence out;
  out.reserve(2 * steps);
  int s = 0;
  for (std::size_t t = 0; t < steps; ++t) {
    const int u = t < info.size() ? (info[t] & 1) : trellis.tail_input(s);
    const int o = trellis.output(s, u);
    out.push_back(static_cast<std::uint8_t>(o & 1));
    out.push_back(static_cast<std::uint8_t>((o >> 1) & 1));
    s = trellis.next_state(s, u);
  }
  return out;
}

WeightSpectrum enumerate_spectrum(const CodeSpec& spec, int d_max, int w_max) {
  if (d_max < 1 || w_max < 1) throw std::invalid_argument("enumerate_spectrum: caps must be positive");
  const Trellis trellis(spec);
  const int ns = trellis.num_states();
  const int W = w_max + 1;
  const int D = d_max + 1;
  auto idx = [&](int s, int w, int d) { return (static_cast<std::size_t>(s) * W + w) * D + d; };

  std::vector<std::uint64_t> cur(static_cast<std::size_t>(ns) * W * D, 0), nxt(cur.size(), 0);
  std::vector<std::uint64_t> found(static_cast<std::size_t>(W) * D, 0);

  // Leave state 0 with a one; the zero-input self loop is removed.
  {
    const int s1 = trellis.next_state(0, 1);
    const int d1 = std::popcount(static_cast<unsigned>(trellis.output(0, 1)));
    if (d1 <= d_max) {
      if (s1 == 0)
        found[static_cast<std::size_t>(1) * D + d1] += 1;
      else
        cur[idx(s1, 1, d1)] = 1;
    }
  }

  const int max_steps = 4 * spec.constraint_length * d_max;
  for (int step = 1; step < max_steps; ++step) {
    bool alive = false;
    std::fill(nxt.begin(), nxt.end(), 0);
    for (int s = 1; s < ns; ++s)
      for (int w = 0; w < W; ++w)
        for (int d = 0; d < D; ++d) {
          const auto c = cur[idx(s, w, d)];
          if (c == 0) continue;
          for (int u = 0; u < 2; ++u) {
            const int w2 = w + u;
            const int d2 = d + std::popcount(static_cast<unsigned>(trellis.output(s, u)));
            if (w2 > w_max || d2 > d_max) continue;
            const int s2 = trellis.next_state(s, u);
            if (s2 == 0) {
              found[static_cast<std::size_t>(w2) * D + d2] += c;
            } else {
              nxt[idx(s2, w2, d2)] += c;
              alive = true;
            }
          }
        }
    std::swap(cur, nxt);
    if (!alive) break;
  }

  std::vector<SpectrumRecord> records;
  for (int w = 0; w < W; ++w)
    for (int d = 0; d < D; ++d)
      if (const auto c = found[static_cast<std::size_t>(w) * D + d]; c > 0)
        records.push_back({w, d, static_cast<double>(c)});
  if (records.empty()) throw std::runtime_error("enumerate_spectrum: no detour within the given caps");
  return WeightSpectrum(std::move(records));
}

FreeDistance free_distance(const CodeSpec& spec) {
  for (int d_max = 2 * spec.constraint_length; d_max <= 64; d_max *= 2) {
    try {
      const auto spectrum = enumerate_spectrum(spec, d_max, d_max);
      const auto& head = spectrum.records().front();
      return {head.d, head.w};
    } catch (const std::runtime_error&) {
    }
  }
  throw std::runtime_error("free_distance: no detour found up to d = 64");
}

int min_distance_for_input_weight(const CodeSpec& spec, int w) {
  for (int d_max = 2 * spec.constraint_length; d_max <= 128; d_max *= 2) {
    try {
      const auto spectrum = enumerate_spectrum(spec, d_max, w);
      if (auto d = spectrum.min_distance_for_weight(w)) return *d;
    } catch (const std::runtime_error&) {
    }
  }
  throw std::runtime_error("min_distance_for_input_weight: no detour of the requested input weight");
}

BitSequence viterbi_decode_api(const CodeSpec& spec, const LlrSequence& channel_llrs, const LlrSequence& apriori) {
  const Trellis trellis(spec);
  const auto k = static_cast<std::size_t>(apriori.size());
  const std::size_t steps = k + static_cast<std::size_t>(spec.tail_length());
  if (static_cast<std::size_t>(channel_llrs.size()) != 2 * steps)
    throw std::invalid_argument("viterbi_decode_api: channel LLR length does not match the terminated block");

  const int ns = trellis.num_states();
  constexpr double neg_inf = -std::numeric_limits<double>::infinity();
  std::vector<double> pm(ns, neg_inf), pm_next(ns);
  pm[0] = 0.0;
  // Survivor choice per (step, state): index into predecessors().
  std::vector<std::uint8_t> choice(steps * static_cast<std::size_t>(ns), 0);

  for (std::size_t t = 0; t < steps; ++t) {
    const double l1 = 0.5 * channel_llrs[static_cast<Eigen::Index>(2 * t)];
    const double l2 = 0.5 * channel_llrs[static_cast<Eigen::Index>(2 * t + 1)];
    const double la = t < k ? 0.5 * apriori[static_cast<Eigen::Index>(t)] : 0.0;
    for (int s2 = 0; s2 < ns; ++s2) {
      double best = neg_inf;
      int best_idx = -1;
      int best_input = 2;
      int best_from = ns;
      const auto& preds = trellis.predecessors(s2);
      for (int p = 0; p < 2; ++p) {
        const auto [from, u] = preds[p];
        if (t >= k && u != trellis.tail_input(from)) continue;
        if (pm[from] == neg_inf) continue;
        const int o = trellis.output(from, u);
        const double m = pm[from] + ((o & 1) ? -l1 : l1) + ((o & 2) ? -l2 : l2) + (u ? -la : la);
        const bool better = m > best || (m == best && (u < best_input || (u == best_input && from < best_from)));
        if (best_idx < 0 || better) {
          best = m;
          best_idx = p;
          best_input = u;
          best_from = from;
        }
      }
      pm_next[s2] = best;
      choice[t * ns + s2] = static_cast<std::uint8_t>(best_idx < 0 ? 0 : best_idx);
    }
    std::swap(pm, pm_next);
  }

  BitSequence decoded(k);
  int s = 0;
  for (std::size_t t = steps; t-- > 0;) {
    const auto br = trellis.predecessors(s)[choice[t * ns + s]];
    if (t < k) decoded[t] = static_cast<std::uint8_t>(br.input);
    s = br.from;
  }
  return decoded;
}

WeightSpectrum bound_spectrum(const CodeSpec& spec) {
  return enumerate_spectrum(spec, free_distance(spec).d_free + 30, 40);
}

}  // namespace apilab
