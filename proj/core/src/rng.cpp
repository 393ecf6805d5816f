#include "rrl/rng.hpp"

#include <numeric>

#include "rrl/errors.hpp"

namespace rrl {

namespace {

std::uint64_t splitmix64(std::uint64_t& x) {
  std::uint64_t z = (x += 0x9e3779b97f4a7c15ull);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

std::uint64_t fnv1a(const std::string& s) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  return h;
}

std::uint64_t rotl(std::uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }

}  // namespace

void RngStream::init_state() {
  std::uint64_t x = seed_ ^ rotl(fnv1a(path_), 17);
  for (auto& s : state_) s = splitmix64(x);
  // xoshiro256** must not start from the all-zero state.
  if ((state_[0] | state_[1] | state_[2] | state_[3]) == 0) state_[0] = 0x1ull;
  draws_ = 0;
}

RngStream::RngStream(std::uint64_t seed) : seed_(seed), path_("/") { init_state(); }

RngStream::RngStream(std::uint64_t seed, const std::string& path) : seed_(seed), path_(path) {
  init_state();
}

RngStream RngStream::child(const std::string& label) const {
  RngStream c(seed_, path_ + "/" + label);
  c.transcript_ = transcript_;
  return c;
}

RngStream RngStream::child(std::uint64_t label) const { return child(std::to_string(label)); }

std::uint64_t RngStream::next_u64() {
  std::uint64_t result = rotl(state_[1] * 5, 7) * 9;
  std::uint64_t t = state_[1] << 17;
  state_[2] ^= state_[0];
  state_[3] ^= state_[1];
  state_[1] ^= state_[2];
  state_[0] ^= state_[3];
  state_[2] ^= t;
  state_[3] = rotl(state_[3], 45);
  if (transcript_) transcript_->push_back({path_, draws_, result});
  ++draws_;
  return result;
}

std::uint64_t RngStream::below(std::uint64_t n) {
  if (n == 0) fail(ErrorKind::InvalidDomain, "uniform draw from empty range");
  if (n == 1) return 0;
  // Rejection sampling on the top bits; unbiased and platform independent.
  std::uint64_t mask = ~0ull >> __builtin_clzll(n - 1 | 1);
  for (;;) {
    std::uint64_t v = next_u64() & mask;
    if (v < n) return v;
  }
}

double RngStream::unit() {
  return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

std::vector<std::uint32_t> RngStream::sample_without_replacement(std::uint32_t n, std::uint32_t count) {
  if (count > n)
    fail(ErrorKind::SampleTooLarge,
         "cannot sample " + std::to_string(count) + " distinct values from " + std::to_string(n));
  std::vector<std::uint32_t> pool(n);
  std::iota(pool.begin(), pool.end(), 0u);
  std::vector<std::uint32_t> out;
  out.reserve(count);
  for (std::uint32_t i = 0; i < count; ++i) {
    std::uint64_t j = i + below(n - i);
    std::swap(pool[i], pool[j]);
    out.push_back(pool[i]);
  }
  return out;
}

}  // namespace rrl
