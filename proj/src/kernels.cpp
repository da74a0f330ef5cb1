#include "gravfm/kernels.hpp"

#include <bit>
#include <cmath>

#include "gravfm/error.hpp"

namespace gravfm {

namespace {
constexpr unsigned kFloatBits = 32;
constexpr unsigned kWeightBits = 32;
}  // namespace

KernelSpec WccKernel::spec() const { return builtin_kernel("wcc", vertex_id_bits_); }
KernelSpec BfsKernel::spec() const { return builtin_kernel("bfs", vertex_id_bits_); }

KernelSpec PageRankKernel::spec() const {
  auto s = builtin_kernel("pr", vertex_id_bits_);
  s.fixed_supersteps = supersteps_;
  return s;
}

PageRankKernel::State PageRankKernel::gather(State s, const Message<MessagePayload>& msg) const {
  s.accum += static_cast<std::uint64_t>(std::llround(msg.payload.contrib * kAccumScale));
  return s;
}

std::pair<PageRankKernel::State, std::optional<Update<PageRankKernel::UpdatePayload>>>
PageRankKernel::apply(State s, Superstep step, VertexId v, std::size_t num_vertices) const {
  const double n = static_cast<double>(num_vertices);
  if (step == 0) {
    s.rank = 1.0 / n;
  } else {
    s.rank = (1.0 - damping_) / n + damping_ * (static_cast<double>(s.accum) / kAccumScale);
  }
  s.accum = 0;
  std::optional<Update<UpdatePayload>> upd;
  if (step < supersteps_) upd = Update<UpdatePayload>{v, {s.rank}, static_cast<std::uint8_t>(step & 1)};
  s.active = step + 1 < supersteps_;
  return {s, upd};
}

void PageRankKernel::hash_state(const State& s, StateHasher& h) const {
  h.add(std::bit_cast<std::uint64_t>(s.rank));
}

KernelSpec builtin_kernel(std::string_view name, unsigned vertex_id_bits, bool weighted) {
  KernelSpec s;
  s.name = std::string(name);
  s.uses_edge_weights = false;
  s.m_edge = vertex_id_bits + (weighted ? kWeightBits : 0);
  if (name == "wcc") {
    // label + active
    s.m_vertex = vertex_id_bits + 1;
    s.m_update = vertex_id_bits;
    s.m_message = vertex_id_bits;
    s.wire_update_payload = s.m_update;
    s.wire_message_payload = s.m_message;
  } else if (name == "bfs") {
    // parent + visited + active; the update and message carry no payload
    // beyond the sender id, which travels in the token header.
    s.m_vertex = vertex_id_bits + 2;
    s.m_update = vertex_id_bits;
    s.m_message = vertex_id_bits;
  } else if (name == "pr") {
    // rank + fixed-point accumulator + active
    s.m_vertex = kFloatBits + 64 + 1;
    s.m_update = kFloatBits;
    s.m_message = kFloatBits;
    s.wire_update_payload = s.m_update;
    s.wire_message_payload = s.m_message;
    s.fixed_supersteps = 30;
  } else {
    throw InvalidArgument("unknown kernel '" + std::string(name) + "' (expected wcc, bfs or pr)");
  }
  return s;
}

}  // namespace gravfm
