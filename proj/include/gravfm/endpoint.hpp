#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "gravfm/error.hpp"
#include "gravfm/kernels.hpp"
#include "gravfm/partition.hpp"

namespace gravfm {

/// Raised when the barrier protocol observes an impossible token sequence.
class ProtocolError : public Error {
 public:
  using Error::Error;
};

enum class TokenKind : std::uint8_t { update, message, barrier };

/// The part of a network token the receiving endpoint inspects.
struct TokenHeader {
  TokenKind kind = TokenKind::update;
  PeId origin = 0;
  Superstep superstep = 0;
  std::uint64_t expected_count = 0;  // barrier only: data tokens origin sent to this PE
  bool any_updates = false;          // barrier only
};

enum class EndpointAction {
  deliver,            // data token accepted for the current superstep
  hold,               // token belongs to the next superstep; buffered on its channel
  release_barrier,    // superstep complete; pass the barrier to the PE
  signal_termination  // superstep complete and no PE produced updates
};

/// Receiving network endpoint of one PE.
///
/// Accepts tokens of the current superstep, buffers tokens of the next one on
/// the other channel, and releases the barrier once every PE's barrier has
/// arrived and the received data count from each origin equals the count that
/// origin announced. A data token that completes the count returns
/// release_barrier; it has been delivered before the barrier.
///
/// After a release the caller replays take_held() through on_token, in order.
template <class Payload>
class Endpoint {
 public:
  explicit Endpoint(std::size_t n_pe)
      : n_pe_(n_pe), received_(n_pe, 0), expected_(n_pe, 0), barrier_seen_(n_pe, 0) {}

  Superstep current() const { return current_; }
  bool terminated() const { return terminated_; }
  std::size_t held_count() const { return held_.size(); }

  EndpointAction on_token(const TokenHeader& hdr, Payload payload) {
    if (terminated_) throw ProtocolError("token arrived after termination");
    if (hdr.origin >= n_pe_) throw ProtocolError("token from unknown PE");
    if (hdr.superstep == current_ + 1) {
      held_.emplace_back(hdr, std::move(payload));
      return EndpointAction::hold;
    }
    if (hdr.superstep != current_) {
      throw ProtocolError("token of superstep " + std::to_string(hdr.superstep) +
                          " reached an endpoint accepting superstep " + std::to_string(current_));
    }
    if (hdr.kind == TokenKind::barrier) {
      if (barrier_seen_[hdr.origin]) throw ProtocolError("duplicate barrier from one PE");
      barrier_seen_[hdr.origin] = 1;
      expected_[hdr.origin] = hdr.expected_count;
      any_updates_ = any_updates_ || hdr.any_updates;
      ++barriers_;
      if (received_[hdr.origin] > expected_[hdr.origin]) {
        throw ProtocolError("received more data tokens than the barrier announced");
      }
      if (received_[hdr.origin] == expected_[hdr.origin]) ++satisfied_;
      return finish_or(EndpointAction::hold);
    }
    ++received_[hdr.origin];
    if (barrier_seen_[hdr.origin]) {
      if (received_[hdr.origin] > expected_[hdr.origin]) {
        throw ProtocolError("received more data tokens than the barrier announced");
      }
      if (received_[hdr.origin] == expected_[hdr.origin]) ++satisfied_;
    }
    return finish_or(EndpointAction::deliver);
  }

  std::vector<std::pair<TokenHeader, Payload>> take_held() {
    std::vector<std::pair<TokenHeader, Payload>> out;
    out.swap(held_);
    return out;
  }

 private:
  EndpointAction finish_or(EndpointAction otherwise) {
    if (satisfied_ != n_pe_) return otherwise;
    if (!any_updates_) {
      terminated_ = true;
      return EndpointAction::signal_termination;
    }
    ++current_;
    std::fill(received_.begin(), received_.end(), 0);
    std::fill(barrier_seen_.begin(), barrier_seen_.end(), 0);
    barriers_ = 0;
    satisfied_ = 0;
    any_updates_ = false;
    return EndpointAction::release_barrier;
  }

  std::size_t n_pe_;
  Superstep current_ = 0;
  std::vector<std::uint64_t> received_;
  std::vector<std::uint64_t> expected_;
  std::vector<std::uint8_t> barrier_seen_;
  std::size_t barriers_ = 0;
  std::size_t satisfied_ = 0;
  bool any_updates_ = false;
  bool terminated_ = false;
  std::vector<std::pair<TokenHeader, Payload>> held_;
};

}  // namespace gravfm
