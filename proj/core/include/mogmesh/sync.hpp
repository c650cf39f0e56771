#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <vector>

#include "mogmesh/model.hpp"

namespace mogmesh {

// Action codes carried in the low byte of GameEvent::payload.
enum class Action : std::uint8_t {
  Move = 1,        // position += (dx, dy)
  Accelerate = 2,  // velocity += (dx, dy)
  Score = 3,       // score += dx
};

struct ActionDelta {
  Action action = Action::Move;
  std::int16_t dx = 0;
  std::int16_t dy = 0;

  friend bool operator==(const ActionDelta&, const ActionDelta&) = default;
};

// Layout: bits 0-7 action code, bits 8-23 dx and bits 24-39 dy as 16-bit
// two's complement.
std::int64_t encode_payload(const ActionDelta& delta);
// Throws ValidationError on an unknown action code.
ActionDelta decode_payload(std::int64_t payload);

struct GameEvent {
  std::uint64_t seq = 0;  // per-source counter
  NodeId source{};
  std::uint64_t tick = 0;
  std::int64_t payload = 0;
  std::uint32_t actor = 0;

  friend bool operator==(const GameEvent&, const GameEvent&) = default;
};

struct ActorState {
  std::int64_t x = 0;
  std::int64_t y = 0;
  std::int64_t vx = 0;
  std::int64_t vy = 0;
  std::int64_t score = 0;

  friend bool operator==(const ActorState&, const ActorState&) = default;
};

struct GameState {
  std::map<std::uint32_t, ActorState> actors;
  std::uint64_t event_count = 0;

  friend bool operator==(const GameState&, const GameState&) = default;
};

struct StateDigest {
  std::uint64_t value = 0;

  friend bool operator==(const StateDigest&, const StateDigest&) = default;
};

// Total order by (tick, source, seq). Throws ValidationError on a repeated
// (source, seq) pair.
std::vector<GameEvent> order_events(std::vector<GameEvent> events);

// Folds the events into a copy of `state`. Throws ValidationError on an
// unknown actor or action code; `state` is left untouched in that case.
GameState apply_events(const GameState& state, std::span<const GameEvent> ordered);

inline constexpr std::uint64_t kFnvOffset = 14695981039346656037ull;
inline constexpr std::uint64_t kFnvPrime = 1099511628211ull;

// Canonical serialization, all integers 8-byte little endian:
//   actor count, then per actor ascending by id: id, x, y, vx, vy, score,
//   then event_count.
std::vector<std::uint8_t> canonical_bytes(const GameState& state);

std::uint64_t fnv1a64(std::span<const std::uint8_t> bytes) noexcept;

// FNV-1a over canonical_bytes().
StateDigest state_digest(const GameState& state);

// True iff every digest is equal. Throws ValidationError on an empty list.
bool check_consistency(std::span<const StateDigest> digests);

struct Velocity {
  double vx = 0.0;
  double vy = 0.0;

  friend bool operator==(const Velocity&, const Velocity&) = default;
};

// Send iff the actual position strays more than `threshold` from the
// first-order prediction last_sent + velocity * elapsed.
bool dr_should_send(const Position& actual, const Position& last_sent,
                    const Velocity& last_sent_velocity, double elapsed,
                    double threshold);

// Sender-side dead-reckoning filter for one actor. The first observation is
// always sent.
class DeadReckoningFilter {
 public:
  explicit DeadReckoningFilter(double threshold) : threshold_(threshold) {}

  // Returns true when an update must be sent; the sent state becomes the new
  // reference.
  bool observe(std::uint64_t tick, const Position& actual, const Velocity& velocity);

  double threshold() const noexcept { return threshold_; }
  std::uint64_t sent() const noexcept { return sent_; }
  std::uint64_t suppressed() const noexcept { return suppressed_; }

  friend bool operator==(const DeadReckoningFilter&, const DeadReckoningFilter&) = default;

 private:
  double threshold_;
  struct Reference {
    std::uint64_t tick;
    Position position;
    Velocity velocity;

    friend bool operator==(const Reference&, const Reference&) = default;
  };
  std::optional<Reference> last_;
  std::uint64_t sent_ = 0;
  std::uint64_t suppressed_ = 0;
};

}  // namespace mogmesh
