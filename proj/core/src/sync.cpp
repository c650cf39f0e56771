#include "mogmesh/sync.hpp"

#include <algorithm>
#include <set>
#include <string>
#include <tuple>
#include <utility>

#include "mogmesh/error.hpp"

namespace mogmesh {

std::int64_t encode_payload(const ActionDelta& delta) {
  auto dx = static_cast<std::uint64_t>(static_cast<std::uint16_t>(delta.dx));
  auto dy = static_cast<std::uint64_t>(static_cast<std::uint16_t>(delta.dy));
  return static_cast<std::int64_t>(static_cast<std::uint64_t>(delta.action) |
                                   (dx << 8) | (dy << 24));
}

ActionDelta decode_payload(std::int64_t payload) {
  auto bits = static_cast<std::uint64_t>(payload);
  auto code = static_cast<std::uint8_t>(bits & 0xFF);
  if (code < 1 || code > 3 || (bits >> 40) != 0) {
    throw ValidationError("unknown action payload " + std::to_string(payload));
  }
  return {static_cast<Action>(code),
          static_cast<std::int16_t>(static_cast<std::uint16_t>((bits >> 8) & 0xFFFF)),
          static_cast<std::int16_t>(static_cast<std::uint16_t>((bits >> 24) & 0xFFFF))};
}

std::vector<GameEvent> order_events(std::vector<GameEvent> events) {
  std::sort(events.begin(), events.end(), [](const GameEvent& a, const GameEvent& b) {
    return std::tie(a.tick, a.source, a.seq) < std::tie(b.tick, b.source, b.seq);
  });
  std::set<std::pair<NodeId, std::uint64_t>> seen;
  for (const auto& e : events) {
    if (!seen.emplace(e.source, e.seq).second) {
      throw ValidationError("duplicate event (source " + std::to_string(value_of(e.source)) +
                            ", seq " + std::to_string(e.seq) + ")");
    }
  }
  return events;
}

GameState apply_events(const GameState& state, std::span<const GameEvent> ordered) {
  GameState next = state;
  for (const auto& e : ordered) {
    auto it = next.actors.find(e.actor);
    if (it == next.actors.end()) {
      throw ValidationError("event references unknown actor " + std::to_string(e.actor));
    }
    ActorState& a = it->second;
    ActionDelta d = decode_payload(e.payload);
    switch (d.action) {
      case Action::Move:
        a.x += d.dx;
        a.y += d.dy;
        break;
      case Action::Accelerate:
        a.vx += d.dx;
        a.vy += d.dy;
        break;
      case Action::Score:
        a.score += d.dx;
        break;
    }
    ++next.event_count;
  }
  return next;
}

std::vector<std::uint8_t> canonical_bytes(const GameState& state) {
  std::vector<std::uint8_t> out;
  out.reserve(16 + state.actors.size() * 48);
  auto put = [&out](auto value) {
    auto v = static_cast<std::uint64_t>(value);
    for (int i = 0; i < 8; ++i) out.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
  };
  put(state.actors.size());
  for (const auto& [id, a] : state.actors) {
    put(id);
    put(a.x);
    put(a.y);
    put(a.vx);
    put(a.vy);
    put(a.score);
  }
  put(state.event_count);
  return out;
}

std::uint64_t fnv1a64(std::span<const std::uint8_t> bytes) noexcept {
  std::uint64_t h = kFnvOffset;
  for (std::uint8_t b : bytes) {
    h ^= b;
    h *= kFnvPrime;
  }
  return h;
}

StateDigest state_digest(const GameState& state) {
  return {fnv1a64(canonical_bytes(state))};
}

bool check_consistency(std::span<const StateDigest> digests) {
  if (digests.empty()) throw ValidationError("check_consistency: no digests");
  return std::all_of(digests.begin(), digests.end(),
                     [&](const StateDigest& d) { return d == digests.front(); });
}

bool dr_should_send(const Position& actual, const Position& last_sent,
                    const Velocity& v, double elapsed, double threshold) {
  Position predicted{last_sent.x + v.vx * elapsed, last_sent.y + v.vy * elapsed};
  return euclidean_distance(actual, predicted) > threshold;
}

bool DeadReckoningFilter::observe(std::uint64_t tick, const Position& actual,
                                  const Velocity& velocity) {
  bool send = !last_ ||
              dr_should_send(actual, last_->position, last_->velocity,
                             static_cast<double>(tick - last_->tick), threshold_);
  if (send) {
    last_ = Reference{tick, actual, velocity};
    ++sent_;
  } else {
    ++suppressed_;
  }
  return send;
}

}  // namespace mogmesh
