#pragma once

#include <array>
#include <optional>
#include <span>
#include <stdexcept>
#include <string_view>
#include <vector>

#include "hgmp/margins.hpp"
#include "hgmp/rng.hpp"
#include "hgmp/types.hpp"

namespace hgmp {

// Raised when a protocol function is called outside its contract, e.g. a
// hunter with an empty profit interval asked to make offers.
class ProtocolError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

struct Announcement {
  AgentId hunter = -1;
  TaskId task = -1;
  Cell location;
  int announced_at = 0;
};

// Online board of waiting hunters. At most one live announcement per hunter;
// waiting() lists them oldest first.
class OnlineBoard {
 public:
  void announce(const Announcement& entry);
  bool has(AgentId hunter) const;
  void withdraw(AgentId hunter);
  std::vector<Announcement> waiting() const;
  std::size_t size() const { return entries_.size(); }
  bool empty() const { return entries_.empty(); }

 private:
  std::vector<Announcement> entries_;
};

struct Offer {
  AgentId hunter = -1;
  AgentId gatherer = -1;
  TaskId task = -1;
  double gatherer_share = 0.0;
};

struct Bid {
  AgentId gatherer = -1;
  TaskId task = -1;
  double hunter_share = 0.0;
};

enum class Mechanism { kBargain, kAuction };
std::string_view to_string(Mechanism mechanism);

enum class Response { kAccept, kReject };

enum class MessageKind { kOffer, kAccept, kReject, kBid };
std::string_view to_string(MessageKind kind);

// One line of a negotiation transcript. `share` is the gatherer share for
// offers and responses, and the hunter share for bids.
struct NegotiationMessage {
  MessageKind kind = MessageKind::kOffer;
  AgentId gatherer = -1;
  double share = 0.0;
};

struct Agreement {
  AgentId gatherer = -1;
  Shares shares;
};

struct NegotiationOutcome {
  Mechanism mechanism = Mechanism::kBargain;
  std::optional<Agreement> agreement;
  std::vector<Bid> bids;
  std::vector<NegotiationMessage> transcript;

  bool succeeded() const { return agreement.has_value(); }
};

// The hunter's three offers in gatherer-share form: its upper bound, the
// midpoint of its interval, and its lower bound, in a uniformly random order.
std::array<double, 3> make_offers(const ProfitInterval& hunter, Rng& rng);

Response evaluate_offer(const ProfitInterval& gatherer, double gatherer_share);

// Single-gatherer negotiation: offers are presented one by one and the first
// accepted offer fixes the split. Fails after three rejections.
NegotiationOutcome bargain(const ProfitInterval& hunter, AgentId gatherer, const ProfitInterval& gatherer_interval,
                           Rng& rng);

// Truthful valuation in hunter-share form: 1 - lower bound of the interval.
Bid place_bid(AgentId gatherer, TaskId task, const ProfitInterval& gatherer_interval);

// Second-price sealed-bid auction. The highest bid wins (ties broken
// uniformly at random) and the hunter receives the second-highest bid, which
// must reach the hunter's lower bound.
NegotiationOutcome run_auction(std::span<const Bid> bids, const ProfitInterval& hunter, Rng& rng);

struct BidderProfile {
  AgentId gatherer = -1;
  double cost = 0.0;
  MarginParams params;
};

struct NashReport {
  bool winner_bid_sufficient = false;        // no loser values the task above the winning bid
  bool winner_valuation_sufficient = false;  // the winner's utility at its paid share is >= 0
  bool hunter_nonnegative = false;           // the hunter's utility at its share is >= 0

  bool all() const { return winner_bid_sufficient && winner_valuation_sufficient && hunter_nonnegative; }
};

// Checks the three equilibrium conditions of a successful auction outcome.
// `bidders` must cover every bid in the outcome.
NashReport verify_nash(const NegotiationOutcome& outcome, std::span<const BidderProfile> bidders, double hunter_cost,
                       const MarginParams& hunter_params, double tolerance = 1e-9);

}  // namespace hgmp
