#ifndef RRL_RNG_HPP
#define RRL_RNG_HPP

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

namespace rrl {

// Deterministic hierarchical random streams.  A stream is identified by a
// 64-bit seed plus a path of labels; identical (seed, path) always produces
// the identical draw sequence regardless of what other streams were used.
// The generator is xoshiro256** seeded by splitmix64 over a path hash, so
// sequences are reproducible across platforms and standard library versions.
class RngStream {
 public:
  RngStream() : RngStream(0) {}
  explicit RngStream(std::uint64_t seed);
  RngStream(std::uint64_t seed, const std::string& path);

  RngStream child(const std::string& label) const;
  RngStream child(std::uint64_t label) const;

  std::uint64_t seed() const { return seed_; }
  const std::string& path() const { return path_; }
  std::uint64_t draws() const { return draws_; }

  std::uint64_t next_u64();
  // Unbiased uniform draw from [0, n); n must be positive.
  std::uint64_t below(std::uint64_t n);
  // Uniform in [0, 1) with 53 random bits.
  double unit();
  bool bernoulli(double p) { return unit() < p; }

  // Ordered sample of `count` distinct values from [0, n) (partial
  // Fisher-Yates; draw order preserved).
  std::vector<std::uint32_t> sample_without_replacement(std::uint32_t n, std::uint32_t count);

  struct TranscriptEntry {
    std::string path;
    std::uint64_t draw_index;
    std::uint64_t value;
  };
  using Transcript = std::vector<TranscriptEntry>;

  // When attached, every next_u64 from this stream and streams derived from
  // it afterwards is appended to the transcript.
  void attach_transcript(std::shared_ptr<Transcript> t) { transcript_ = std::move(t); }

 private:
  std::uint64_t seed_ = 0;
  std::string path_;
  std::uint64_t state_[4] = {0, 0, 0, 0};
  std::uint64_t draws_ = 0;
  std::shared_ptr<Transcript> transcript_;

  void init_state();
};

}  // namespace rrl

#endif
