#pragma once

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "hgmp/types.hpp"

namespace hgmp {

enum class EventType : std::uint8_t {
  kMove,               // value: odometer after the step
  kDetect,             // value: hunting cost charged to the task
  kForgo,              // detection dropped as unprofitable; value: its cost
  kAnnounce,
  kReadiness,          // value: gatherer's tentative cost for the task
  kOffer,              // value: gatherer share offered
  kAccept,
  kReject,
  kBid,                // value: hunter share bid
  kAgreement,          // value: hunter share, extra: gatherer share
  kNegotiationFailed,  // extra: number of gatherers involved
  kComplete,           // value: gathering cost charged to the task
  kSpawn,              // extra: 1 when no unknown cell was available
};

std::string_view to_string(EventType type);

struct Event {
  int iteration = 0;
  Role role = Role::kHunter;
  AgentId actor = -1;  // -1 for the environment
  EventType type = EventType::kMove;
  TaskId task = -1;
  AgentId counterpart = -1;
  Cell cell;
  double value = 0.0;
  double extra = 0.0;
};

struct AgentSnapshot {
  Role role = Role::kHunter;
  AgentId id = -1;
  Cell position;
  double odometer = 0.0;
  int accomplished = 0;  // tasks hunted or gathered
  double charged = 0.0;  // sum of the agent's per-task costs
};

struct MissionLog {
  int hunters = 0;
  int gatherers = 0;
  int iterations = 0;
  double rho_h = 0.0;
  double rho_g = 1.0;
  std::vector<Event> events;
  std::vector<AgentSnapshot> final_agents;

  void add(const Event& event) { events.push_back(event); }

  // One event per row: iteration,actor,event,task,counterpart,row,col,value,extra
  void write_csv(std::ostream& out) const;
  std::string to_csv() const;
};

// "h3", "g0" or "env".
std::string actor_name(Role role, AgentId id);

}  // namespace hgmp
