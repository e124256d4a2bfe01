#include "apilab/turbo.hpp"

#include <algorithm>
#include <bit>
#include <map>
#include <set>
#include <stdexcept>

#include "apilab/maxstar.hpp"

namespace apilab {

namespace {

constexpr double neg = -1e30;

int parity_bit(int out) { return (out >> 1) & 1; }

}  // namespace

TurboSpec::TurboSpec(std::shared_ptr<const Interleaver> il, bool punct, CodeSpec code)
    : constituent(code), interleaver(std::move(il)), punctured(punct) {
  if (!interleaver) throw std::invalid_argument("TurboSpec: missing interleaver");
  constituent.validate();
  if (!constituent.systematic() || !constituent.recursive())
    throw std::invalid_argument("TurboSpec: constituent must be recursive systematic (g1 == feedback)");
  if (punctured && k() % 2 != 0) throw std::invalid_argument("TurboSpec: punctured mode needs an even block length");
}

std::size_t TurboSpec::codeword_length() const {
  const auto kk = static_cast<std::size_t>(k());
  return (punctured ? 2 * kk : 3 * kk) + 2 * static_cast<std::size_t>(tail());
}

BitSequence turbo_encode(const TurboSpec& spec, const BitSequence& info) {
  const int k = spec.k();
  if (static_cast<int>(info.size()) != k) throw std::invalid_argument("turbo_encode: info length != interleaver size");
  const Trellis tr(spec.constituent);

  BitSequence p1(static_cast<std::size_t>(k)), p2(static_cast<std::size_t>(k));
  int s = 0;
  for (int i = 0; i < k; ++i) {
    const int u = info[static_cast<std::size_t>(i)] & 1;
    p1[static_cast<std::size_t>(i)] = static_cast<std::uint8_t>(parity_bit(tr.output(s, u)));
    s = tr.next_state(s, u);
  }
  BitSequence tail_bits;
  for (int t = 0; t < spec.tail(); ++t) {
    const int u = tr.tail_input(s);
    tail_bits.push_back(static_cast<std::uint8_t>(u));
    tail_bits.push_back(static_cast<std::uint8_t>(parity_bit(tr.output(s, u))));
    s = tr.next_state(s, u);
  }
  s = 0;
  const auto& perm = spec.interleaver->permutation();
  for (int i = 0; i < k; ++i) {
    const int u = info[static_cast<std::size_t>(perm[static_cast<std::size_t>(i)])] & 1;
    p2[static_cast<std::size_t>(i)] = static_cast<std::uint8_t>(parity_bit(tr.output(s, u)));
    s = tr.next_state(s, u);
  }

  BitSequence out;
  out.reserve(spec.codeword_length());
  for (int i = 0; i < k; ++i) {
    out.push_back(info[static_cast<std::size_t>(i)] & 1);
    if (spec.keeps_parity1(i)) out.push_back(p1[static_cast<std::size_t>(i)]);
    if (spec.keeps_parity2(i)) out.push_back(p2[static_cast<std::size_t>(i)]);
  }
  out.insert(out.end(), tail_bits.begin(), tail_bits.end());
  return out;
}

TurboChannelLlrs depuncture(const TurboSpec& spec, const LlrSequence& received) {
  const int k = spec.k();
  const int tail = spec.tail();
  if (static_cast<std::size_t>(received.size()) != spec.codeword_length())
    throw std::invalid_argument("depuncture: received length does not match the code");
  TurboChannelLlrs ch{LlrSequence::Zero(k + tail), LlrSequence::Zero(k + tail), LlrSequence::Zero(k)};
  Eigen::Index pos = 0;
  for (int i = 0; i < k; ++i) {
    ch.systematic[i] = received[pos++];
    if (spec.keeps_parity1(i)) ch.parity1[i] = received[pos++];
    if (spec.keeps_parity2(i)) ch.parity2[i] = received[pos++];
  }
  for (int t = 0; t < tail; ++t) {
    ch.systematic[k + t] = received[pos++];
    ch.parity1[k + t] = received[pos++];
  }
  return ch;
}

BcjrOutput bcjr_decode(const Trellis& tr, const LlrSequence& first, const LlrSequence& second,
                       const LlrSequence& apriori, bool terminated) {
  const Eigen::Index k = apriori.size();
  const Eigen::Index steps = k + (terminated ? tr.spec().tail_length() : 0);
  if (first.size() != steps || second.size() != steps)
    throw std::invalid_argument("bcjr_decode: channel LLR length does not match the block");
  if (!first.allFinite() || !second.allFinite() || !apriori.allFinite())
    throw std::invalid_argument("bcjr_decode: non-finite input LLR");

  const int ns = tr.num_states();
  // Branch metric = go(out, t) +/- ga(t) for input 0/1.
  Eigen::Matrix<double, 4, Eigen::Dynamic> go(4, steps);
  Eigen::VectorXd ga = Eigen::VectorXd::Zero(steps);
  for (Eigen::Index t = 0; t < steps; ++t) {
    const double a = 0.5 * first[t];
    const double b = 0.5 * second[t];
    go(0, t) = a + b;
    go(1, t) = -a + b;
    go(2, t) = a - b;
    go(3, t) = -a - b;
    if (t < k) ga[t] = 0.5 * apriori[t];
  }
  auto branch = [&](int s, int u, Eigen::Index t) { return go(tr.output(s, u), t) + (u ? -ga[t] : ga[t]); };

  // Columns are time steps, so each column is a contiguous state vector.
  Eigen::MatrixXd alpha(ns, steps + 1);
  Eigen::MatrixXd beta(ns, steps + 1);
  alpha.col(0).fill(neg);
  alpha(0, 0) = 0.0;
  for (Eigen::Index t = 0; t < steps; ++t) {
    const double* a = alpha.col(t).data();
    double* next = alpha.col(t + 1).data();
    if (t < k) {
      for (int s2 = 0; s2 < ns; ++s2) {
        const auto& p = tr.predecessors(s2);
        next[s2] = max_star(a[p[0].from] + branch(p[0].from, p[0].input, t),
                            a[p[1].from] + branch(p[1].from, p[1].input, t));
      }
    } else {
      std::fill(next, next + ns, neg);
      for (int s = 0; s < ns; ++s) {
        const int u = tr.tail_input(s);
        const int s2 = tr.next_state(s, u);
        next[s2] = max_star(next[s2], a[s] + branch(s, u, t));
      }
    }
    alpha.col(t + 1).array() -= alpha.col(t + 1).maxCoeff();
  }

  if (terminated) {
    beta.col(steps).fill(neg);
    beta(0, steps) = 0.0;
  } else {
    beta.col(steps).setZero();
  }
  for (Eigen::Index t = steps; t-- > 0;) {
    const double* b = beta.col(t + 1).data();
    double* cur = beta.col(t).data();
    if (t < k) {
      for (int s = 0; s < ns; ++s)
        cur[s] = max_star(b[tr.next_state(s, 0)] + branch(s, 0, t), b[tr.next_state(s, 1)] + branch(s, 1, t));
    } else {
      for (int s = 0; s < ns; ++s) {
        const int u = tr.tail_input(s);
        cur[s] = b[tr.next_state(s, u)] + branch(s, u, t);
      }
    }
    beta.col(t).array() -= beta.col(t).maxCoeff();
  }

  BcjrOutput out{LlrSequence(k), LlrSequence(k)};
  const bool systematic = tr.spec().systematic();
  for (Eigen::Index t = 0; t < k; ++t) {
    const double* a = alpha.col(t).data();
    const double* b = beta.col(t + 1).data();
    double num0 = a[0] + branch(0, 0, t) + b[tr.next_state(0, 0)];
    double num1 = a[0] + branch(0, 1, t) + b[tr.next_state(0, 1)];
    for (int s = 1; s < ns; ++s) {
      num0 = max_star(num0, a[s] + branch(s, 0, t) + b[tr.next_state(s, 0)]);
      num1 = max_star(num1, a[s] + branch(s, 1, t) + b[tr.next_state(s, 1)]);
    }
    out.posterior[t] = num0 - num1;
    out.extrinsic[t] = out.posterior[t] - apriori[t] - (systematic ? first[t] : 0.0);
  }
  return out;
}

BcjrOutput bcjr_decode(const CodeSpec& spec, const LlrSequence& channel_llrs, const LlrSequence& apriori_total,
                       bool terminated) {
  const Trellis tr(spec);
  const Eigen::Index steps = apriori_total.size() + (terminated ? spec.tail_length() : 0);
  if (channel_llrs.size() != 2 * steps) throw std::invalid_argument("bcjr_decode: channel LLR length mismatch");
  LlrSequence first(steps), second(steps);
  for (Eigen::Index t = 0; t < steps; ++t) {
    first[t] = channel_llrs[2 * t];
    second[t] = channel_llrs[2 * t + 1];
  }
  return bcjr_decode(tr, first, second, apriori_total, terminated);
}

TurboDecoder::TurboDecoder(const TurboSpec& spec) : spec_(spec), trellis_(spec.constituent) { reset(); }

void TurboDecoder::reset() {
  const int k = spec_.k();
  state_ = DecoderState{LlrSequence::Zero(k), LlrSequence::Zero(k), LlrSequence::Zero(k), {}, 0};
}

TurboDecodeResult TurboDecoder::run(const TurboChannelLlrs& ch, const LlrSequence& external_api, int max_iters,
                                    bool early_exit) {
  const int k = spec_.k();
  if (max_iters < 1) throw std::invalid_argument("turbo decode: max_iters must be >= 1");
  if (external_api.size() != k) throw std::invalid_argument("turbo decode: external prior length != k");
  const Interleaver& il = *spec_.interleaver;
  const LlrSequence sys_k = ch.systematic.head(k);
  const LlrSequence sys_int = il.interleave(sys_k);
  const LlrSequence api_int = il.interleave(external_api);

  TurboDecodeResult result;
  for (int it = 0; it < max_iters; ++it) {
    const LlrSequence prior1 = state_.extrinsic2 + external_api;
    const auto out1 = bcjr_decode(trellis_, ch.systematic, ch.parity1, prior1, true);
    state_.extrinsic1 = out1.extrinsic.cwiseMax(-extrinsic_clamp).cwiseMin(extrinsic_clamp);
    const BitSequence half = hard_decision(out1.posterior);

    const LlrSequence prior2 = il.interleave(state_.extrinsic1) + api_int;
    const auto out2 = bcjr_decode(trellis_, sys_int, ch.parity2, prior2, false);
    state_.extrinsic2 = il.deinterleave(out2.extrinsic).cwiseMax(-extrinsic_clamp).cwiseMin(extrinsic_clamp);

    state_.posterior = sys_k + external_api + state_.extrinsic1 + state_.extrinsic2;
    BitSequence decision = hard_decision(state_.posterior);
    ++state_.iteration;
    ++result.iterations;
    // Both half-iterations and the previous iteration must agree; a single
    // repeat can happen while the extrinsics are still drifting.
    const bool stable = !state_.decision.empty() && decision == state_.decision && half == decision;
    state_.decision = std::move(decision);
    if (early_exit && stable) {
      result.converged = true;
      break;
    }
  }
  result.bits = state_.decision;
  return result;
}

TurboDecodeResult turbo_decode(const TurboSpec& spec, const LlrSequence& channel_llrs, const LlrSequence& external_api,
                               int max_iters, bool early_exit) {
  TurboDecoder dec(spec);
  return dec.run(depuncture(spec, channel_llrs), external_api, max_iters, early_exit);
}

// ---------------------------------------------------------------------------
// Low-weight enumeration

int turbo_codeword_weight(const TurboSpec& spec, std::vector<int> positions, int cap) {
  const int k = spec.k();
  const Trellis tr(spec.constituent);
  std::sort(positions.begin(), positions.end());
  positions.erase(std::unique(positions.begin(), positions.end()), positions.end());
  if (positions.empty()) return 0;
  int weight = static_cast<int>(positions.size());
  if (weight > cap) return cap + 1;

  auto run = [&](const std::vector<int>& ones, bool first_encoder) {
    int s = 0;
    std::size_t next = 0;
    for (int t = ones.front(); t < k; ++t) {
      int u = 0;
      if (next < ones.size() && ones[next] == t) {
        u = 1;
        ++next;
      }
      const bool kept = first_encoder ? spec.keeps_parity1(t) : spec.keeps_parity2(t);
      if (kept) weight += parity_bit(tr.output(s, u));
      s = tr.next_state(s, u);
      if (weight > cap) return false;
      if (s == 0 && next == ones.size()) return true;
    }
    if (first_encoder) {
      for (int t = 0; t < spec.tail(); ++t) {
        const int u = tr.tail_input(s);
        weight += u + parity_bit(tr.output(s, u));
        s = tr.next_state(s, u);
      }
    }
    return weight <= cap;
  };

  if (!run(positions, true)) return cap + 1;
  std::vector<int> interleaved;
  interleaved.reserve(positions.size());
  for (int p : positions) interleaved.push_back(spec.interleaver->inverse()[static_cast<std::size_t>(p)]);
  std::sort(interleaved.begin(), interleaved.end());
  if (!run(interleaved, false)) return cap + 1;
  return weight;
}

namespace {

// Depth-first search over single detours of one constituent, in that
// constituent's time axis. Weight counts systematic ones plus kept parity.
class DetourSearch {
 public:
  DetourSearch(const TurboSpec& spec, const Trellis& tr, bool first_encoder, int w_cap, int d_cap)
      : spec_(spec), tr_(tr), first_(first_encoder), w_cap_(w_cap), d_cap_(d_cap), k_(spec.k()) {}

  std::vector<std::vector<int>> from(int start) {
    found_.clear();
    path_.assign(1, start);
    const int add = 1 + (kept(start) ? parity_bit(tr_.output(0, 1)) : 0);
    if (add <= d_cap_) step(start + 1, tr_.next_state(0, 1), 1, add);
    return found_;
  }

 private:
  bool kept(int t) const { return first_ ? spec_.keeps_parity1(t) : spec_.keeps_parity2(t); }

  void step(int t, int s, int w, int weight) {
    if (s == 0) {
      found_.push_back(path_);
      return;
    }
    if (t == k_) {
      if (first_) {
        for (int i = 0; i < spec_.tail(); ++i) {
          const int u = tr_.tail_input(s);
          weight += u + parity_bit(tr_.output(s, u));
          s = tr_.next_state(s, u);
        }
      }
      if (weight <= d_cap_) found_.push_back(path_);
      return;
    }
    for (int u = 0; u < 2; ++u) {
      if (u == 1 && w == w_cap_) continue;
      const int add = u + (kept(t) ? parity_bit(tr_.output(s, u)) : 0);
      if (weight + add > d_cap_) continue;
      if (u) path_.push_back(t);
      step(t + 1, tr_.next_state(s, u), w + u, weight + add);
      if (u) path_.pop_back();
    }
  }

  const TurboSpec& spec_;
  const Trellis& tr_;
  bool first_;
  int w_cap_;
  int d_cap_;
  int k_;
  std::vector<int> path_;
  std::vector<std::vector<int>> found_;
};

}  // namespace

WeightSpectrum enumerate_turbo_floor_spectrum(const TurboSpec& spec, int w_cap, int d_cap) {
  if (w_cap < 2 || w_cap > 4) throw std::invalid_argument("enumerate_turbo_floor_spectrum: w_cap must be in [2, 4]");
  if (d_cap < 2) throw std::invalid_argument("enumerate_turbo_floor_spectrum: d_cap must be >= 2");
  const Trellis tr(spec.constituent);
  const int k = spec.k();
  const auto& perm = spec.interleaver->permutation();

  std::set<std::vector<int>> candidates;
  std::vector<std::vector<int>> adj1(static_cast<std::size_t>(k)), adj2(static_cast<std::size_t>(k));

  DetourSearch search1(spec, tr, true, w_cap, d_cap);
  DetourSearch search2(spec, tr, false, w_cap, d_cap);
  for (int start = 0; start < k; ++start) {
    for (auto& p : search1.from(start)) {
      if (p.size() == 2) {
        adj1[static_cast<std::size_t>(p[0])].push_back(p[1]);
        adj1[static_cast<std::size_t>(p[1])].push_back(p[0]);
      }
      candidates.insert(std::move(p));
    }
    for (auto p : search2.from(start)) {
      for (int& x : p) x = perm[static_cast<std::size_t>(x)];
      std::sort(p.begin(), p.end());
      if (p.size() == 2) {
        adj2[static_cast<std::size_t>(p[0])].push_back(p[1]);
        adj2[static_cast<std::size_t>(p[1])].push_back(p[0]);
      }
      candidates.insert(std::move(p));
    }
  }

  if (w_cap >= 4) {
    // a -1- b -2- c -1- d -2- a : two weight-2 detours in each constituent.
    for (int a = 0; a < k; ++a)
      for (int b : adj1[static_cast<std::size_t>(a)])
        for (int c : adj2[static_cast<std::size_t>(b)]) {
          if (c == a) continue;
          for (int d : adj1[static_cast<std::size_t>(c)]) {
            if (d == a || d == b) continue;
            const auto& back = adj2[static_cast<std::size_t>(d)];
            if (std::find(back.begin(), back.end(), a) == back.end()) continue;
            std::vector<int> pattern{a, b, c, d};
            std::sort(pattern.begin(), pattern.end());
            candidates.insert(std::move(pattern));
          }
        }
  }

  std::map<std::pair<int, int>, double> counts;
  for (const auto& p : candidates) {
    const int d = turbo_codeword_weight(spec, p, d_cap);
    if (d <= d_cap) counts[{static_cast<int>(p.size()), d}] += 1.0;
  }
  std::vector<SpectrumRecord> records;
  for (const auto& [wd, beta] : counts) records.push_back({wd.first, wd.second, beta});
  if (records.empty()) throw std::runtime_error("enumerate_turbo_floor_spectrum: no pattern within the caps");
  return WeightSpectrum(std::move(records));
}

}  // namespace apilab
