#include "apilab/interleaver.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>
#include <stdexcept>

#include "apilab/rng.hpp"

namespace apilab {

Interleaver::Interleaver(std::vector<int> perm, InterleaverKind kind, int spread)
    : perm_(std::move(perm)), inv_(perm_.size(), -1), kind_(kind), spread_(spread) {
  if (perm_.empty()) throw std::invalid_argument("interleaver: empty permutation");
  const int k = static_cast<int>(perm_.size());
  for (int i = 0; i < k; ++i) {
    const int p = perm_[static_cast<std::size_t>(i)];
    if (p < 0 || p >= k || inv_[static_cast<std::size_t>(p)] != -1)
      throw std::invalid_argument("interleaver: not a bijection on {0..k-1}");
    inv_[static_cast<std::size_t>(p)] = i;
  }
  if (kind_ == InterleaverKind::s_random && (spread_ < 1 || !satisfies_spread(spread_)))
    throw std::invalid_argument("interleaver: permutation violates the S-random spread constraint");
}

Interleaver Interleaver::identity(int k) {
  std::vector<int> p(static_cast<std::size_t>(k));
  std::iota(p.begin(), p.end(), 0);
  return Interleaver(std::move(p));
}

LlrSequence Interleaver::interleave(const LlrSequence& in) const {
  if (in.size() != size()) throw std::invalid_argument("interleave: length mismatch");
  LlrSequence out(in.size());
  for (int i = 0; i < size(); ++i) out[i] = in[perm_[static_cast<std::size_t>(i)]];
  return out;
}

LlrSequence Interleaver::deinterleave(const LlrSequence& in) const {
  if (in.size() != size()) throw std::invalid_argument("deinterleave: length mismatch");
  LlrSequence out(in.size());
  for (int i = 0; i < size(); ++i) out[perm_[static_cast<std::size_t>(i)]] = in[i];
  return out;
}

bool Interleaver::satisfies_spread(int s) const {
  const int k = size();
  for (int i = 0; i < k; ++i)
    for (int j = i + 1; j <= std::min(k - 1, i + s); ++j)
      if (std::abs(perm_[static_cast<std::size_t>(i)] - perm_[static_cast<std::size_t>(j)]) <= s) return false;
  return true;
}

void Interleaver::save(const std::filesystem::path& path) const {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write interleaver file " + path.string());
  for (int p : perm_) out << p << '\n';
}

Interleaver Interleaver::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read interleaver file " + path.string());
  std::vector<int> perm;
  int v = 0;
  while (in >> v) perm.push_back(v);
  if (!in.eof()) throw std::runtime_error("interleaver file " + path.string() + ": malformed entry");
  return Interleaver(std::move(perm));
}

int default_spread(int k) { return static_cast<int>(std::floor(std::sqrt(k / 2.0))); }

Interleaver build_random_interleaver(int k, std::uint64_t seed) {
  if (k < 2) throw std::invalid_argument("interleaver size must be >= 2");
  std::vector<int> p(static_cast<std::size_t>(k));
  std::iota(p.begin(), p.end(), 0);
  Rng rng(seed);
  for (int i = k - 1; i > 0; --i) {
    std::uniform_int_distribution<int> pick(0, i);
    std::swap(p[static_cast<std::size_t>(i)], p[static_cast<std::size_t>(pick(rng))]);
  }
  return Interleaver(std::move(p), InterleaverKind::random, 0);
}

Interleaver build_s_random_interleaver(int k, std::uint64_t seed, SRandomOptions options) {
  if (k < 2) throw std::invalid_argument("interleaver size must be >= 2");
  const int s = options.spread < 0 ? default_spread(k) : options.spread;
  Rng rng(seed);
  std::vector<int> pool;
  std::vector<int> perm;

  // Value v may sit at position pos if it is farther than s from every
  // placed neighbour within distance s (ignoring position `skip`).
  auto fits_at = [&](int v, int pos, int skip) {
    const int lo = std::max(0, pos - s);
    const int hi = std::min(static_cast<int>(perm.size()) - 1, pos + s);
    for (int j = lo; j <= hi; ++j)
      if (j != pos && j != skip && std::abs(v - perm[static_cast<std::size_t>(j)]) <= s) return false;
    return true;
  };

  for (int attempt = 0; attempt < options.max_restarts; ++attempt) {
    pool.resize(static_cast<std::size_t>(k));
    std::iota(pool.begin(), pool.end(), 0);
    std::shuffle(pool.begin(), pool.end(), rng);
    perm.clear();
    bool ok = true;
    for (int i = 0; i < k && ok; ++i) {
      auto it = std::find_if(pool.begin(), pool.end(), [&](int cand) { return fits_at(cand, i, -1); });
      if (it != pool.end()) {
        perm.push_back(*it);
        pool.erase(it);
        continue;
      }
      // Dead end: swap an unused value into an earlier slot whose occupant
      // fits here instead.
      ok = false;
      std::uniform_int_distribution<std::size_t> pick_pool(0, pool.size() - 1);
      const std::size_t c = pick_pool(rng);
      const int cand = pool[c];
      perm.push_back(-k - s - 1);  // placeholder, never within s of a value
      for (int tries = 0; tries < 4 * i && !ok; ++tries) {
        std::uniform_int_distribution<int> pick_pos(0, i - 1);
        const int j = pick_pos(rng);
        const int old = perm[static_cast<std::size_t>(j)];
        if (std::abs(j - i) <= s) continue;
        if (fits_at(cand, j, -1) && fits_at(old, i, j)) {
          perm[static_cast<std::size_t>(j)] = cand;
          perm[static_cast<std::size_t>(i)] = old;
          pool.erase(pool.begin() + static_cast<std::ptrdiff_t>(c));
          ok = true;
        }
      }
    }
    if (ok) return Interleaver(std::move(perm), InterleaverKind::s_random, s);
  }
  throw std::runtime_error("S-random construction failed after " + std::to_string(options.max_restarts) +
                           " restarts; try a smaller spread than S=" + std::to_string(s));
}

Interleaver build_interleaver(InterleaverKind kind, int k, std::uint64_t seed) {
  return kind == InterleaverKind::random ? build_random_interleaver(k, seed) : build_s_random_interleaver(k, seed);
}

std::string to_string(InterleaverKind kind) { return kind == InterleaverKind::random ? "random" : "srandom"; }

InterleaverKind parse_interleaver_kind(const std::string& name) {
  if (name == "random") return InterleaverKind::random;
  if (name == "srandom" || name == "s_random" || name == "s-random") return InterleaverKind::s_random;
  throw std::invalid_argument("unknown interleaver kind '" + name + "' (expected random or srandom)");
}

}  // namespace apilab
