#include "hgmp/mission_log.hpp"

#include <ostream>
#include <sstream>

#include "hgmp/config.hpp"

namespace hgmp {

std::string_view to_string(EventType type) {
  switch (type) {
    case EventType::kMove: return "move";
    case EventType::kDetect: return "detect";
    case EventType::kForgo: return "forgo";
    case EventType::kAnnounce: return "announce";
    case EventType::kReadiness: return "readiness";
    case EventType::kOffer: return "offer";
    case EventType::kAccept: return "accept";
    case EventType::kReject: return "reject";
    case EventType::kBid: return "bid";
    case EventType::kAgreement: return "agreement";
    case EventType::kNegotiationFailed: return "negotiation_failed";
    case EventType::kComplete: return "complete";
    case EventType::kSpawn: return "spawn";
  }
  return "?";
}

std::string actor_name(Role role, AgentId id) {
  if (id < 0) return "env";
  return (role == Role::kHunter ? "h" : "g") + std::to_string(id);
}

void MissionLog::write_csv(std::ostream& out) const {
  out << "iteration,actor,event,task,counterpart,row,col,value,extra\n";
  for (const Event& e : events) {
    out << e.iteration << ',' << actor_name(e.role, e.actor) << ',' << to_string(e.type) << ',' << e.task << ',';
    if (e.counterpart >= 0) out << actor_name(e.role == Role::kHunter ? Role::kGatherer : Role::kHunter, e.counterpart);
    out << ',' << e.cell.row << ',' << e.cell.col << ',' << format_number(e.value) << ',' << format_number(e.extra)
        << '\n';
  }
  for (const AgentSnapshot& a : final_agents) {
    out << iterations << ',' << actor_name(a.role, a.id) << ",final,-1,," << a.position.row << ',' << a.position.col
        << ',' << format_number(a.odometer) << ',' << format_number(a.charged) << '\n';
  }
}

std::string MissionLog::to_csv() const {
  std::ostringstream out;
  write_csv(out);
  return out.str();
}

}  // namespace hgmp
