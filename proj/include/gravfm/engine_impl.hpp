#pragma once

// Discrete-event core behind simulate(). Included from engine.hpp only.

#include <algorithm>
#include <cmath>
#include <deque>
#include <memory>
#include <optional>
#include <queue>
#include <vector>

#include "gravfm/rng.hpp"

namespace gravfm::detail {

inline unsigned bits_for(std::size_t n) {
  unsigned b = 1;
  while ((std::size_t{1} << b) < n) ++b;
  return b;
}

/// Scatter front end shared by the receiver-side (broadcast) and sender-side
/// (unicast) layouts: one edge-list lookup per cycle, bounded in-flight memory
/// requests, one edge per cycle out, and one reset cycle per non-empty list.
struct ScatterUnit {
  Cycle lookup_free = 0;
  Cycle issue_free = 0;
  std::deque<Cycle> inflight;  // data-return times of outstanding requests

  Cycle lookup(Cycle t) {
    const Cycle start = std::max(t, lookup_free);
    lookup_free = start + 1;
    return start;
  }

  /// First issue cycle for an edge list of len edges looked up at `start`.
  Cycle fetch(Cycle start, std::size_t len, Cycle mem_latency, std::size_t max_outstanding) {
    Cycle req = start;
    while (!inflight.empty() && inflight.front() <= req) inflight.pop_front();
    if (inflight.size() >= max_outstanding) {
      req = std::max(req, inflight.front());
      inflight.pop_front();
    }
    const Cycle data = req + mem_latency;
    inflight.push_back(data);
    const Cycle begin = std::max(data, issue_free);
    issue_free = begin + len + 1;
    return begin;
  }

  Cycle drained(Cycle t) const { return std::max({t, lookup_free, issue_free}); }
};

template <VertexKernel K>
class Simulator {
  using State = typename K::State;
  using UPay = typename K::UpdatePayload;
  using MPay = typename K::MessagePayload;

  struct Token {
    TokenKind kind = TokenKind::update;
    PeId origin = 0;
    Superstep superstep = 0;
    VertexId sender = 0;
    VertexId dest = 0;
    UPay upay{};
    MPay mpay{};
    bool any_updates = false;
    std::shared_ptr<const std::vector<std::uint64_t>> counts;  // barrier: per destination PE
  };

  struct OutItem {
    Cycle ready;
    Token token;
  };

  enum class EventType : std::uint8_t { port_send, link_arrive, endpoint_arrive };

  struct Event {
    Cycle time;
    std::uint64_t tie;
    std::uint64_t seq;
    EventType type;
    std::uint32_t target;
    Token token;
  };

  struct EventLater {
    bool operator()(const Event& a, const Event& b) const {
      if (a.time != b.time) return a.time > b.time;
      if (a.tie != b.tie) return a.tie > b.tie;
      return a.seq > b.seq;
    }
  };

  struct Pe {
    explicit Pe(std::size_t n_pe, std::size_t n_fpga)
        : endpoint(n_pe), sent_to_fpga(n_fpga, 0), sent_to_pe(n_pe, 0) {}

    std::vector<VertexId> vertices;
    ScatterUnit scatter;
    Cycle gather_free = 0;
    Cycle last_write = 0;
    Superstep applied = 0;

    std::deque<OutItem> out;
    Cycle port_free = 0;
    bool send_scheduled = false;
    bool blocked = false;
    std::size_t queued_updates = 0;
    std::size_t capacity = 0;

    Endpoint<Token> endpoint;
    std::vector<std::uint64_t> sent_to_fpga;
    std::vector<std::uint64_t> sent_to_pe;
    bool any_updates = false;

    bool terminated = false;
    Superstep term_step = 0;
    Cycle term_time = 0;
  };

  struct Link {
    double free_at = 0.0;
  };

 public:
  Simulator(const Graph& g, const PlacementMap& placement, const K& kernel, const SimConfig& config)
      : g_(g),
        placement_(placement),
        kernel_(kernel),
        cfg_(config),
        spec_(kernel.spec()),
        broadcast_(config.delivery_mode == DeliveryMode::broadcast_updates),
        rng_(config.rng_seed) {
    cfg_.validate();
    if (placement.num_vertices() != g.num_vertices()) {
      throw InvalidArgument("placement does not match the graph's vertex count");
    }
    if (placement.n_fpga() != cfg_.n_fpga || placement.pes_per_fpga() != cfg_.n_pe_per_fpga) {
      throw InvalidArgument("placement shape does not match the simulation config");
    }
    if (broadcast_) sublists_.emplace(g, placement);
    if (broadcast_ && cfg_.filter_enabled && cfg_.n_fpga > 1) filter_.emplace(g, placement);

    const std::size_t n_pe = cfg_.n_pe();
    pes_.reserve(n_pe);
    for (std::size_t p = 0; p < n_pe; ++p) pes_.emplace_back(n_pe, cfg_.n_fpga);
    auto by_pe = placement.vertices_by_pe();
    for (std::size_t p = 0; p < n_pe; ++p) {
      pes_[p].vertices = std::move(by_pe[p]);
      pes_[p].capacity = cfg_.update_queue_capacity ? cfg_.update_queue_capacity
                                                    : std::max<std::size_t>(1, pes_[p].vertices.size());
    }
    outbound_step_.assign(cfg_.n_fpga, 0);
    outbound_barriers_.assign(cfg_.n_fpga, 0);
    blocked_.resize(cfg_.n_fpga);
    links_.resize(cfg_.n_fpga * cfg_.n_fpga);

    states_.reserve(g.num_vertices());
    for (VertexId v = 0; v < g.num_vertices(); ++v) states_.push_back(kernel.initial_state(v, g.num_vertices()));
    hazard_ready_.assign(g.num_vertices(), 0);

    const unsigned id_bits = cfg_.vertex_id_bits;
    update_wire_bits_ = id_bits + spec_.wire_update_payload + 1;
    message_wire_bits_ = 2 * id_bits + spec_.wire_message_payload + 1;
    const unsigned counts_per_barrier = broadcast_ ? 1 : static_cast<unsigned>(cfg_.n_pe_per_fpga);
    barrier_wire_bits_ = bits_for(n_pe) + 2 + cfg_.count_bits * counts_per_barrier;
  }

  SimResult<K> run() {
    for (PeId p = 0; p < pes_.size(); ++p) run_apply(p, 0);
    while (!events_.empty()) {
      Event ev = events_.top();
      events_.pop();
      now_ = ev.time;
      switch (ev.type) {
        case EventType::port_send: on_port_send(ev.target, ev.time); break;
        case EventType::link_arrive: on_link_arrive(ev.target, std::move(ev.token), ev.time); break;
        case EventType::endpoint_arrive: on_endpoint_arrive(ev.target, std::move(ev.token), ev.time); break;
      }
    }
    return finish();
  }

 private:
  // ------------------------------------------------------------------ events

  void schedule(Cycle time, EventType type, std::uint32_t target, Token token = {}) {
    const std::uint64_t component = (static_cast<std::uint64_t>(type) << 32) | target;
    const std::uint64_t tie = cfg_.rng_seed == 0 ? component : mix64(cfg_.rng_seed ^ mix64(component + 1));
    events_.push(Event{std::max(time, now_), tie, seq_++, type, target, std::move(token)});
  }

  Cycle jitter() { return cfg_.network_jitter_cycles ? rng_.below(cfg_.network_jitter_cycles + 1) : 0; }

  std::size_t first_pe_of(FpgaId f) const { return f * cfg_.n_pe_per_fpga; }

  SuperstepStats& step_stats(Superstep s) {
    while (steps_.size() <= s) {
      steps_.emplace_back();
      steps_.back().superstep = steps_.size() - 1;
    }
    return steps_[s];
  }

  // -------------------------------------------------------------- PE output

  void push_output(PeId p, Cycle ready, Token token) {
    Pe& pe = pes_[p];
    if (token.kind == TokenKind::update) {
      if (++pe.queued_updates > pe.capacity) {
        throw SimulationError("update queue overflow on PE " + std::to_string(p) + " (capacity " +
                              std::to_string(pe.capacity) + ")");
      }
      max_queue_ = std::max<std::uint64_t>(max_queue_, pe.queued_updates);
    }
    pe.out.push_back({ready, std::move(token)});
    maybe_schedule_port(p);
  }

  void maybe_schedule_port(PeId p) {
    Pe& pe = pes_[p];
    if (pe.send_scheduled || pe.blocked || pe.out.empty()) return;
    pe.send_scheduled = true;
    schedule(std::max(pe.out.front().ready, pe.port_free), EventType::port_send, p);
  }

  void on_port_send(PeId p, Cycle t) {
    Pe& pe = pes_[p];
    pe.send_scheduled = false;
    const FpgaId f = placement_.fpga_of_pe(p);
    // Inter-FPGA channels are sequentialized: the FPGA's outgoing endpoint
    // accepts one superstep at a time.
    if (cfg_.n_fpga > 1 && pe.out.front().token.superstep != outbound_step_[f]) {
      if (pe.out.front().token.superstep < outbound_step_[f]) {
        throw ProtocolError("token behind its FPGA's outbound superstep");
      }
      pe.blocked = true;
      blocked_[f].push_back(p);
      return;
    }
    OutItem item = std::move(pe.out.front());
    pe.out.pop_front();
    pe.port_free = t + 1;
    if (item.token.kind == TokenKind::update) --pe.queued_updates;
    send_token(p, std::move(item.token), t);
    maybe_schedule_port(p);
  }

  void send_token(PeId q, Token tok, Cycle t) {
    Pe& pe = pes_[q];
    const FpgaId f = placement_.fpga_of_pe(q);
    const Cycle xbar = cfg_.crossbar_latency_cycles;
    switch (tok.kind) {
      case TokenKind::update: {
        ++pe.sent_to_fpga[f];
        for (FpgaId g = 0; g < cfg_.n_fpga; ++g) {
          if (g == f) continue;
          if (filter_ && !filter_->test(tok.sender, g)) continue;
          ++pe.sent_to_fpga[g];
          link_send(f, g, tok, t);
        }
        // One crossbar insertion fanned out to every local PE.
        for (std::size_t i = 0; i < cfg_.n_pe_per_fpga; ++i) {
          schedule(t + xbar + jitter(), EventType::endpoint_arrive, first_pe_of(f) + i, tok);
        }
        break;
      }
      case TokenKind::message: {
        const PeId dst = placement_.pe_of(tok.dest);
        const FpgaId g = placement_.fpga_of_pe(dst);
        ++pe.sent_to_pe[dst];
        if (g == f) {
          schedule(t + xbar + jitter(), EventType::endpoint_arrive, dst, std::move(tok));
        } else {
          link_send(f, g, std::move(tok), t);
        }
        break;
      }
      case TokenKind::barrier: {
        auto counts = std::make_shared<std::vector<std::uint64_t>>(pes_.size(), 0);
        for (PeId p = 0; p < pes_.size(); ++p) {
          (*counts)[p] = broadcast_ ? pe.sent_to_fpga[placement_.fpga_of_pe(p)] : pe.sent_to_pe[p];
        }
        std::fill(pe.sent_to_fpga.begin(), pe.sent_to_fpga.end(), 0);
        std::fill(pe.sent_to_pe.begin(), pe.sent_to_pe.end(), 0);
        tok.counts = std::move(counts);
        for (FpgaId g = 0; g < cfg_.n_fpga; ++g) {
          if (g != f) link_send(f, g, tok, t);
        }
        for (std::size_t i = 0; i < cfg_.n_pe_per_fpga; ++i) {
          schedule(t + xbar + jitter(), EventType::endpoint_arrive, first_pe_of(f) + i, tok);
        }
        if (++outbound_barriers_[f] == cfg_.n_pe_per_fpga) {
          outbound_barriers_[f] = 0;
          ++outbound_step_[f];
          auto waiting = std::move(blocked_[f]);
          blocked_[f].clear();
          for (PeId p : waiting) {
            pes_[p].blocked = false;
            pes_[p].port_free = std::max(pes_[p].port_free, t + 1);
            maybe_schedule_port(p);
          }
        }
        break;
      }
    }
  }

  void link_send(FpgaId f, FpgaId g, Token tok, Cycle t) {
    Link& link = links_[f * cfg_.n_fpga + g];
    unsigned bits = 0;
    if (tok.kind == TokenKind::barrier) {
      bits = barrier_wire_bits_;
      ++barrier_tokens_;
      barrier_bits_ += bits;
    } else {
      const bool is_update = tok.kind == TokenKind::update;
      bits = is_update ? update_wire_bits_ : message_wire_bits_;
      const unsigned payload = is_update ? spec_.m_update : spec_.m_message;
      ++inter_tokens_;
      inter_wire_bits_ += bits;
      inter_payload_bits_ += payload;
      auto& st = step_stats(tok.superstep);
      ++st.inter_fpga_tokens;
      st.inter_fpga_payload_bits += payload;
    }
    const double start = std::max(static_cast<double>(t), link.free_at);
    link.free_at = start + bits / cfg_.link_bandwidth_bits_per_cycle;
    const Cycle arrive = static_cast<Cycle>(std::ceil(link.free_at)) + cfg_.link_latency_cycles + jitter();
    schedule(arrive, EventType::link_arrive, g, std::move(tok));
  }

  void on_link_arrive(FpgaId g, Token tok, Cycle t) {
    const Cycle xbar = cfg_.crossbar_latency_cycles;
    if (tok.kind == TokenKind::message) {
      schedule(t + xbar + jitter(), EventType::endpoint_arrive, placement_.pe_of(tok.dest), std::move(tok));
      return;
    }
    for (std::size_t i = 0; i < cfg_.n_pe_per_fpga; ++i) {
      schedule(t + xbar + jitter(), EventType::endpoint_arrive, first_pe_of(g) + i, tok);
    }
  }

  // --------------------------------------------------------------- endpoint

  void on_endpoint_arrive(PeId p, Token tok, Cycle t) {
    Pe& pe = pes_[p];
    TokenHeader hdr;
    hdr.kind = tok.kind;
    hdr.origin = tok.origin;
    hdr.superstep = tok.superstep;
    if (tok.kind == TokenKind::barrier) {
      hdr.expected_count = (*tok.counts)[p];
      hdr.any_updates = tok.any_updates;
    }
    const Superstep step = pe.endpoint.current();
    EndpointAction action;
    if (tok.kind != TokenKind::barrier && tok.superstep == step) {
      deliver(p, tok, t);
      action = pe.endpoint.on_token(hdr, Token{});
    } else {
      action = pe.endpoint.on_token(hdr, std::move(tok));
    }

    if (action == EndpointAction::signal_termination) {
      pe.terminated = true;
      pe.term_step = step;
      pe.term_time = t;
      auto& st = step_stats(step);
      st.end_cycle = std::max(st.end_cycle, t);
      return;
    }
    if (action == EndpointAction::release_barrier) {
      if (step + 1 >= cfg_.max_supersteps) {
        throw SimulationError("superstep cap of " + std::to_string(cfg_.max_supersteps) + " exceeded");
      }
      auto& st = step_stats(step);
      st.end_cycle = std::max(st.end_cycle, t);
      if (broadcast_) {
        // The barrier follows the last update through the scatter stage.
        gather_barrier(p, pe.scatter.drained(pe.scatter.lookup(t)));
      } else {
        gather_barrier(p, t);
      }
      for (auto& [h, held] : pe.endpoint.take_held()) on_endpoint_arrive(p, std::move(held), t);
    }
  }

  void deliver(PeId p, const Token& tok, Cycle t) {
    if (tok.kind == TokenKind::update) {
      scatter_update(p, tok, t);
    } else {
      Message<MPay> msg{tok.sender, tok.dest, tok.mpay, static_cast<std::uint8_t>(tok.superstep & 1)};
      gather_message(p, msg, tok.superstep, t);
    }
  }

  // ------------------------------------------------------------ PE pipeline

  void scatter_update(PeId p, const Token& tok, Cycle t) {
    Pe& pe = pes_[p];
    const Cycle start = pe.scatter.lookup(t);
    auto sub = sublists_->sublist(p, tok.sender);
    if (sub.empty()) return;  // no local neighbors: no memory request
    auto wts = sublists_->weights(p, tok.sender);
    const Cycle begin = pe.scatter.fetch(start, sub.size(), cfg_.scatter_memory_latency_cycles,
                                         cfg_.scatter_max_outstanding);
    const Update<UPay> upd{tok.sender, tok.upay, static_cast<std::uint8_t>(tok.superstep & 1)};
    const std::size_t outdeg = g_.outdegree(tok.sender);
    for (std::size_t i = 0; i < sub.size(); ++i) {
      std::optional<double> w;
      if (!wts.empty()) w = wts[i];
      gather_message(p, kernel_.scatter(upd, sub[i], outdeg, w), tok.superstep, begin + i);
    }
    count_scatter(tok.superstep, sub.size());
  }

  void count_scatter(Superstep s, std::size_t len) {
    messages_ += len;
    scatter_busy_ += len + 1;
    ++reset_cycles_;
    step_stats(s).messages += len;
  }

  void gather_message(PeId p, const Message<MPay>& msg, Superstep s, Cycle t) {
    Pe& pe = pes_[p];
    // Messages generated from superstep-s updates belong between apply s and
    // apply s+1 of the receiving PE.
    if (s + 1 != pe.applied) ++separation_violations_;
    Cycle start = std::max(t, pe.gather_free);
    const Cycle ready = hazard_ready_[msg.dest];
    if (ready > start) {
      hazard_stalls_ += ready - start;
      start = ready;
    }
    states_[msg.dest] = kernel_.gather(states_[msg.dest], msg);
    const Cycle depth = std::max<Cycle>(1, cfg_.gather_hazard_depth_cycles);
    pe.gather_free = start + 1;
    hazard_ready_[msg.dest] = start + depth;
    pe.last_write = std::max(pe.last_write, start + depth);
  }

  void gather_barrier(PeId p, Cycle t) {
    Pe& pe = pes_[p];
    run_apply(p, std::max({t, pe.gather_free, pe.last_write}));
  }

  void run_apply(PeId p, Cycle start) {
    Pe& pe = pes_[p];
    const Superstep s = pe.applied;
    const Cycle lat = cfg_.apply_latency_cycles;
    const std::size_t n = g_.num_vertices();
    bool any = false;
    std::size_t emitted = 0;
    for (std::size_t i = 0; i < pe.vertices.size(); ++i) {
      const VertexId v = pe.vertices[i];
      auto [state, upd] = kernel_.apply(states_[v], s, v, n);
      states_[v] = state;
      if (!upd) continue;
      any = true;
      ++emitted;
      const Cycle at = start + i + lat;
      if (broadcast_) {
        Token tok;
        tok.kind = TokenKind::update;
        tok.origin = p;
        tok.superstep = s;
        tok.sender = v;
        tok.upay = upd->payload;
        push_output(p, at, std::move(tok));
      } else {
        sender_scatter(p, *upd, s, at);
      }
    }
    if (!broadcast_ && emitted > pe.capacity) {
      throw SimulationError("update queue overflow on PE " + std::to_string(p));
    }
    if (!broadcast_) max_queue_ = std::max<std::uint64_t>(max_queue_, emitted);
    updates_ += emitted;
    step_stats(s).updates += emitted;

    const Cycle end = start + pe.vertices.size() + lat;
    ++pe.applied;
    pe.gather_free = std::max(pe.gather_free, end);
    pe.last_write = std::max(pe.last_write, end);

    Token barrier;
    barrier.kind = TokenKind::barrier;
    barrier.origin = p;
    barrier.superstep = s;
    barrier.any_updates = any;
    push_output(p, broadcast_ ? end : pe.scatter.drained(end), std::move(barrier));
  }

  // GraVF layout: the sender expands its own full adjacency.
  void sender_scatter(PeId p, const Update<UPay>& upd, Superstep s, Cycle t) {
    Pe& pe = pes_[p];
    const Cycle start = pe.scatter.lookup(t);
    auto nbrs = g_.neighbors(upd.sender);
    if (nbrs.empty()) return;
    auto wts = g_.weights(upd.sender);
    const Cycle begin = pe.scatter.fetch(start, nbrs.size(), cfg_.scatter_memory_latency_cycles,
                                         cfg_.scatter_max_outstanding);
    for (std::size_t i = 0; i < nbrs.size(); ++i) {
      std::optional<double> w;
      if (!wts.empty()) w = wts[i];
      const auto msg = kernel_.scatter(upd, nbrs[i], nbrs.size(), w);
      Token tok;
      tok.kind = TokenKind::message;
      tok.origin = p;
      tok.superstep = s;
      tok.sender = msg.sender;
      tok.dest = msg.dest;
      tok.mpay = msg.payload;
      push_output(p, begin + i, std::move(tok));
    }
    count_scatter(s, nbrs.size());
  }

  // ----------------------------------------------------------------- report

  SimResult<K> finish() {
    RunReport r;
    for (PeId p = 0; p < pes_.size(); ++p) {
      if (!pes_[p].terminated) {
        throw SimulationError("deadlock: PE " + std::to_string(p) + " never observed termination");
      }
    }
    r.kernel = spec_.name;
    r.delivery_mode = cfg_.delivery_mode;
    r.filter_enabled = cfg_.filter_enabled;
    r.n_fpga = cfg_.n_fpga;
    r.n_pe_per_fpga = cfg_.n_pe_per_fpga;
    r.num_vertices = g_.num_vertices();
    r.num_edges = g_.num_edges();
    r.rng_seed = cfg_.rng_seed;

    Superstep term = pes_.front().term_step;
    Cycle end = 0;
    for (const Pe& pe : pes_) {
      r.termination_superstep_by_pe.push_back(pe.term_step);
      r.termination_cycle_by_pe.push_back(pe.term_time);
      end = std::max(end, pe.term_time);
      if (pe.term_step != term) throw ProtocolError("PEs detected termination in different supersteps");
    }
    r.supersteps = term;
    r.apply_phases = term + 1;
    r.messages_generated = messages_;
    r.updates_emitted = updates_;
    r.inter_fpga_tokens = inter_tokens_;
    r.inter_fpga_payload_bits = inter_payload_bits_;
    r.inter_fpga_wire_bits = inter_wire_bits_;
    r.inter_fpga_barrier_tokens = barrier_tokens_;
    r.inter_fpga_barrier_bits = barrier_bits_;
    r.simulated_cycles = end;
    r.f_clk = cfg_.f_clk;
    r.wall_equivalent_seconds = static_cast<double>(end) / cfg_.f_clk;
    r.teps = compute_teps(messages_, end, cfg_.f_clk);
    r.scatter_reset_cycles = reset_cycles_;
    r.hazard_stall_cycles = hazard_stalls_;
    r.pe_active_cycles = scatter_busy_ + hazard_stalls_;
    r.cpe_effective = messages_ ? static_cast<double>(r.pe_active_cycles) / static_cast<double>(messages_) : 0.0;
    r.max_update_queue_occupancy = max_queue_;
    r.separation_violations = separation_violations_;

    step_stats(term);
    steps_.resize(term + 1);
    Cycle prev = 0;
    for (auto& st : steps_) {
      st.cycles = st.end_cycle - prev;
      prev = st.end_cycle;
    }
    r.per_superstep = std::move(steps_);
    r.state_digest = state_digest(kernel_, states_);
    return {std::move(r), std::move(states_)};
  }

  const Graph& g_;
  const PlacementMap& placement_;
  const K& kernel_;
  SimConfig cfg_;
  KernelSpec spec_;
  bool broadcast_;
  SplitMix64 rng_;

  std::optional<PeEdgeSublists> sublists_;
  std::optional<NeighborFilterBitmap> filter_;
  std::vector<Pe> pes_;
  std::vector<State> states_;
  std::vector<Cycle> hazard_ready_;
  std::vector<Superstep> outbound_step_;
  std::vector<std::size_t> outbound_barriers_;
  std::vector<std::vector<PeId>> blocked_;
  std::vector<Link> links_;

  std::priority_queue<Event, std::vector<Event>, EventLater> events_;
  Cycle now_ = 0;
  std::uint64_t seq_ = 0;

  unsigned update_wire_bits_ = 0;
  unsigned message_wire_bits_ = 0;
  unsigned barrier_wire_bits_ = 0;

  std::uint64_t messages_ = 0;
  std::uint64_t updates_ = 0;
  std::uint64_t inter_tokens_ = 0;
  std::uint64_t inter_payload_bits_ = 0;
  std::uint64_t inter_wire_bits_ = 0;
  std::uint64_t barrier_tokens_ = 0;
  std::uint64_t barrier_bits_ = 0;
  std::uint64_t scatter_busy_ = 0;
  std::uint64_t reset_cycles_ = 0;
  std::uint64_t hazard_stalls_ = 0;
  std::uint64_t max_queue_ = 0;
  std::uint64_t separation_violations_ = 0;
  std::vector<SuperstepStats> steps_;
};

}  // namespace gravfm::detail

namespace gravfm {

template <VertexKernel K>
SimResult<K> simulate(const Graph& g, const PlacementMap& placement, const K& kernel, const SimConfig& config) {
  return detail::Simulator<K>(g, placement, kernel, config).run();
}

}  // namespace gravfm
