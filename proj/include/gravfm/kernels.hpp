#pragma once

#include <concepts>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>

#include "gravfm/graph.hpp"

namespace gravfm {

using Superstep = std::uint64_t;

/// Bit sizes of a kernel's data layouts, used for traffic accounting and by
/// the performance model.
struct KernelSpec {
  std::string name;
  unsigned m_vertex = 0;   // vertex state
  unsigned m_update = 0;   // update payload
  unsigned m_message = 0;  // message payload
  unsigned m_edge = 0;     // stored edge (neighbor id + optional weight)
  // Payload bits a token actually carries on the wire beyond its header
  // (sender, dest, round). Equal to m_update/m_message unless the payload is
  // the sender id itself, as for BFS.
  unsigned wire_update_payload = 0;
  unsigned wire_message_payload = 0;
  bool uses_edge_weights = false;
  std::optional<Superstep> fixed_supersteps;
};

/// Output of apply, tagged with the channel (superstep parity) it travels on.
template <class Payload>
struct Update {
  VertexId sender = 0;
  Payload payload{};
  std::uint8_t round = 0;
  bool operator==(const Update&) const = default;
};

template <class Payload>
struct Message {
  VertexId sender = 0;
  VertexId dest = 0;
  Payload payload{};
  std::uint8_t round = 0;
  bool operator==(const Message&) const = default;
};

struct NoPayload {
  bool operator==(const NoPayload&) const = default;
};

/// Incremental FNV-1a 64 used for final-state digests.
class StateHasher {
 public:
  void add(std::uint64_t value) {
    for (int i = 0; i < 8; ++i) {
      hash_ ^= (value >> (8 * i)) & 0xff;
      hash_ *= 0x100000001b3ULL;
    }
  }
  std::uint64_t value() const { return hash_; }

 private:
  std::uint64_t hash_ = 0xcbf29ce484222325ULL;
};

/// The three-function kernel contract. Every function must be pure.
template <class K>
concept VertexKernel = requires(const K& k, typename K::State s, Superstep step, VertexId v,
                                std::size_t n, const Message<typename K::MessagePayload>& msg,
                                const Update<typename K::UpdatePayload>& upd, StateHasher& h) {
  typename K::State;
  typename K::UpdatePayload;
  typename K::MessagePayload;
  { k.spec() } -> std::convertible_to<KernelSpec>;
  { k.initial_state(v, n) } -> std::same_as<typename K::State>;
  { k.gather(s, msg) } -> std::same_as<typename K::State>;
  {
    k.apply(s, step, v, n)
  } -> std::same_as<std::pair<typename K::State, std::optional<Update<typename K::UpdatePayload>>>>;
  { k.scatter(upd, v, n, std::optional<double>{}) } -> std::same_as<Message<typename K::MessagePayload>>;
  { k.hash_state(s, h) };
};

/// Weakly connected components: propagate the smallest seen vertex id.
class WccKernel {
 public:
  struct State {
    VertexId label = 0;
    bool active = false;
    bool operator==(const State&) const = default;
  };
  struct UpdatePayload {
    VertexId label = 0;
    bool operator==(const UpdatePayload&) const = default;
  };
  using MessagePayload = UpdatePayload;

  explicit WccKernel(unsigned vertex_id_bits = 32) : vertex_id_bits_(vertex_id_bits) {}

  KernelSpec spec() const;

  // Every vertex starts active with its own id as label.
  State initial_state(VertexId v, std::size_t) const { return {v, true}; }

  State gather(State s, const Message<MessagePayload>& msg) const {
    if (s.label > msg.payload.label) return {msg.payload.label, true};
    return s;
  }

  std::pair<State, std::optional<Update<UpdatePayload>>> apply(State s, Superstep step, VertexId v,
                                                               std::size_t) const {
    std::optional<Update<UpdatePayload>> upd;
    if (s.active) upd = Update<UpdatePayload>{v, {s.label}, static_cast<std::uint8_t>(step & 1)};
    s.active = false;
    return {s, upd};
  }

  Message<MessagePayload> scatter(const Update<UpdatePayload>& upd, VertexId neighbor, std::size_t,
                                  std::optional<double>) const {
    return {upd.sender, neighbor, upd.payload, upd.round};
  }

  void hash_state(const State& s, StateHasher& h) const { h.add(s.label); }

 private:
  unsigned vertex_id_bits_;
};

/// Breadth-first search building a parent tree from a single root.
///
/// A vertex takes the first sender it hears from; if several parents reach it
/// in the same superstep the smallest sender id wins, which makes the tree
/// independent of message arrival order.
class BfsKernel {
 public:
  static constexpr VertexId kNoParent = ~VertexId{0};

  struct State {
    VertexId parent = kNoParent;
    bool visited = false;
    bool active = false;
    bool operator==(const State&) const = default;
  };
  using UpdatePayload = NoPayload;
  using MessagePayload = NoPayload;

  explicit BfsKernel(VertexId root = 0, unsigned vertex_id_bits = 32)
      : root_(root), vertex_id_bits_(vertex_id_bits) {}

  VertexId root() const { return root_; }
  KernelSpec spec() const;

  State initial_state(VertexId v, std::size_t) const {
    if (v == root_) return {v, true, true};
    return {};
  }

  State gather(State s, const Message<MessagePayload>& msg) const {
    if (!s.visited) return {msg.sender, true, true};
    if (s.active && msg.sender < s.parent) s.parent = msg.sender;
    return s;
  }

  std::pair<State, std::optional<Update<UpdatePayload>>> apply(State s, Superstep step, VertexId v,
                                                               std::size_t) const {
    std::optional<Update<UpdatePayload>> upd;
    if (s.active) upd = Update<UpdatePayload>{v, {}, static_cast<std::uint8_t>(step & 1)};
    s.active = false;
    return {s, upd};
  }

  Message<MessagePayload> scatter(const Update<UpdatePayload>& upd, VertexId neighbor, std::size_t,
                                  std::optional<double>) const {
    return {upd.sender, neighbor, {}, upd.round};
  }

  void hash_state(const State& s, StateHasher& h) const {
    h.add(s.parent);
    h.add(s.visited);
  }

 private:
  VertexId root_;
  unsigned vertex_id_bits_;
};

/// PageRank in the synchronous vertex-centric formulation, run for a fixed
/// number of supersteps. Contributions are summed in 2^-62 fixed point so the
/// result does not depend on the order messages are gathered in.
class PageRankKernel {
 public:
  static constexpr double kAccumScale = 0x1.0p62;

  struct State {
    double rank = 0.0;
    std::uint64_t accum = 0;
    bool active = false;
    bool operator==(const State&) const = default;
  };
  struct UpdatePayload {
    double rank = 0.0;
    bool operator==(const UpdatePayload&) const = default;
  };
  struct MessagePayload {
    double contrib = 0.0;
    bool operator==(const MessagePayload&) const = default;
  };

  explicit PageRankKernel(double damping = 0.85, Superstep supersteps = 30, unsigned vertex_id_bits = 32)
      : damping_(damping), supersteps_(supersteps), vertex_id_bits_(vertex_id_bits) {}

  double damping() const { return damping_; }
  Superstep supersteps() const { return supersteps_; }
  KernelSpec spec() const;

  State initial_state(VertexId, std::size_t) const { return {0.0, 0, true}; }

  State gather(State s, const Message<MessagePayload>& msg) const;

  std::pair<State, std::optional<Update<UpdatePayload>>> apply(State s, Superstep step, VertexId v,
                                                               std::size_t num_vertices) const;

  Message<MessagePayload> scatter(const Update<UpdatePayload>& upd, VertexId neighbor,
                                  std::size_t num_neighbors, std::optional<double>) const {
    return {upd.sender, neighbor, {upd.payload.rank / static_cast<double>(num_neighbors)}, upd.round};
  }

  void hash_state(const State& s, StateHasher& h) const;

 private:
  double damping_;
  Superstep supersteps_;
  unsigned vertex_id_bits_;
};

static_assert(VertexKernel<WccKernel>);
static_assert(VertexKernel<BfsKernel>);
static_assert(VertexKernel<PageRankKernel>);

/// Layout sizes of the built-in kernels by name ("wcc", "bfs", "pr").
KernelSpec builtin_kernel(std::string_view name, unsigned vertex_id_bits = 32, bool weighted = false);

}  // namespace gravfm
