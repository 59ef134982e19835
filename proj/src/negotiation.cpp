#include "hgmp/negotiation.hpp"

#include <algorithm>
#include <limits>

namespace hgmp {

void OnlineBoard::announce(const Announcement& entry) {
  if (has(entry.hunter)) throw ProtocolError("hunter already has a live announcement");
  entries_.push_back(entry);
}

bool OnlineBoard::has(AgentId hunter) const {
  return std::any_of(entries_.begin(), entries_.end(), [&](const Announcement& a) { return a.hunter == hunter; });
}

void OnlineBoard::withdraw(AgentId hunter) {
  std::erase_if(entries_, [&](const Announcement& a) { return a.hunter == hunter; });
}

std::vector<Announcement> OnlineBoard::waiting() const {
  std::vector<Announcement> sorted = entries_;
  std::stable_sort(sorted.begin(), sorted.end(), [](const Announcement& a, const Announcement& b) {
    if (a.announced_at != b.announced_at) return a.announced_at < b.announced_at;
    return a.hunter < b.hunter;
  });
  return sorted;
}

std::string_view to_string(Mechanism mechanism) {
  return mechanism == Mechanism::kBargain ? "bargain" : "auction";
}

std::string_view to_string(MessageKind kind) {
  switch (kind) {
    case MessageKind::kOffer: return "offer";
    case MessageKind::kAccept: return "accept";
    case MessageKind::kReject: return "reject";
    case MessageKind::kBid: return "bid";
  }
  return "?";
}

std::array<double, 3> make_offers(const ProfitInterval& hunter, Rng& rng) {
  if (hunter.empty) throw ProtocolError("hunter has no profit interval to make offers from");
  std::array<double, 3> offers{
      1.0 - hunter.upper,
      1.0 - 0.5 * (hunter.lower + hunter.upper),
      1.0 - hunter.lower,
  };
  rng.shuffle(std::span<double>(offers));
  return offers;
}

Response evaluate_offer(const ProfitInterval& gatherer, double gatherer_share) {
  return gatherer.contains(gatherer_share) ? Response::kAccept : Response::kReject;
}

NegotiationOutcome bargain(const ProfitInterval& hunter, AgentId gatherer, const ProfitInterval& gatherer_interval,
                           Rng& rng) {
  NegotiationOutcome outcome;
  outcome.mechanism = Mechanism::kBargain;
  for (const double offer : make_offers(hunter, rng)) {
    outcome.transcript.push_back({MessageKind::kOffer, gatherer, offer});
    if (evaluate_offer(gatherer_interval, offer) == Response::kAccept) {
      outcome.transcript.push_back({MessageKind::kAccept, gatherer, offer});
      outcome.agreement = Agreement{gatherer, Shares{1.0 - offer, offer}};
      break;
    }
    outcome.transcript.push_back({MessageKind::kReject, gatherer, offer});
  }
  return outcome;
}

Bid place_bid(AgentId gatherer, TaskId task, const ProfitInterval& gatherer_interval) {
  if (gatherer_interval.empty) throw ProtocolError("gatherer without a profit interval cannot bid");
  return Bid{gatherer, task, 1.0 - gatherer_interval.lower};
}

NegotiationOutcome run_auction(std::span<const Bid> bids, const ProfitInterval& hunter, Rng& rng) {
  if (bids.size() < 2) throw ProtocolError("an auction needs at least two bids");
  if (hunter.empty) throw ProtocolError("hunter has no profit interval to hold an auction with");

  NegotiationOutcome outcome;
  outcome.mechanism = Mechanism::kAuction;
  outcome.bids.assign(bids.begin(), bids.end());
  for (const Bid& bid : bids) outcome.transcript.push_back({MessageKind::kBid, bid.gatherer, bid.hunter_share});

  double best = -std::numeric_limits<double>::infinity();
  for (const Bid& bid : bids) best = std::max(best, bid.hunter_share);
  std::vector<std::size_t> leaders;
  for (std::size_t i = 0; i < bids.size(); ++i) {
    if (bids[i].hunter_share == best) leaders.push_back(i);
  }
  const std::size_t winner = leaders.size() == 1 ? leaders.front() : leaders[rng.uniform_index(leaders.size())];

  double second = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < bids.size(); ++i) {
    if (i != winner) second = std::max(second, bids[i].hunter_share);
  }
  if (second >= hunter.lower) {
    outcome.agreement = Agreement{bids[winner].gatherer, Shares{second, 1.0 - second}};
  }
  return outcome;
}

NashReport verify_nash(const NegotiationOutcome& outcome, std::span<const BidderProfile> bidders, double hunter_cost,
                       const MarginParams& hunter_params, double tolerance) {
  if (outcome.mechanism != Mechanism::kAuction || !outcome.succeeded()) {
    throw std::invalid_argument("verify_nash needs a successful auction outcome");
  }
  const Agreement& deal = *outcome.agreement;
  auto profile_of = [&](AgentId id) -> const BidderProfile& {
    const auto it = std::find_if(bidders.begin(), bidders.end(), [&](const BidderProfile& p) { return p.gatherer == id; });
    if (it == bidders.end()) throw std::invalid_argument("no bidder profile for gatherer " + std::to_string(id));
    return *it;
  };
  const auto winning_bid = std::find_if(outcome.bids.begin(), outcome.bids.end(),
                                        [&](const Bid& b) { return b.gatherer == deal.gatherer; });
  if (winning_bid == outcome.bids.end()) throw std::invalid_argument("winner placed no bid");

  NashReport report;
  report.winner_bid_sufficient = true;
  for (const Bid& bid : outcome.bids) {
    if (bid.gatherer == deal.gatherer) continue;
    const BidderProfile& loser = profile_of(bid.gatherer);
    const ProfitInterval interval = profit_interval(loser.cost, loser.params);
    if (interval.empty) continue;  // values the task below any bid
    if (1.0 - interval.lower > winning_bid->hunter_share + tolerance) report.winner_bid_sufficient = false;
  }
  const BidderProfile& winner = profile_of(deal.gatherer);
  report.winner_valuation_sufficient = utility(winner.cost, deal.shares.gatherer, winner.params) >= -tolerance;
  report.hunter_nonnegative = utility(hunter_cost, deal.shares.hunter, hunter_params) >= -tolerance;
  return report;
}

}  // namespace hgmp
