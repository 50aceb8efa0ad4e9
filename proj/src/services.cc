#include "isproc/services.h"

#include <stdexcept>

namespace isproc {

ServiceInstance::ServiceInstance(std::shared_ptr<const ServiceBehavior> behavior, State state)
    : behavior_(std::move(behavior)), state_(std::move(state)) {
  if (!behavior_) throw std::invalid_argument("service behaviour must not be null");
}

ServiceInstance ServiceInstance::empty() { return ServiceInstance(); }

ServiceInstance::Processed ServiceInstance::process(const std::string& method) const {
  if (is_empty()) return {SReply::Blocked, empty()};
  SReply r = behavior_->reply(method, *state_);
  if (r == SReply::Blocked) return {r, empty()};
  return {r, ServiceInstance(behavior_, behavior_->effect(method, *state_))};
}

std::string ServiceInstance::encode() const {
  if (is_empty()) return "empty";
  return behavior_->id() + "@" + state_->encode();
}

std::string ServiceInstance::describe() const {
  if (is_empty()) return "empty";
  return behavior_->describe(*state_);
}

bool ServiceInstance::operator==(const ServiceInstance& o) const {
  if (is_empty() || o.is_empty()) return is_empty() == o.is_empty();
  return (behavior_ == o.behavior_ || behavior_->id() == o.behavior_->id()) &&
         *state_ == *o.state_;
}

ServiceFamily ServiceFamily::singleton(const std::string& focus, ServiceInstance svc) {
  if (!is_identifier(focus)) throw std::invalid_argument("malformed focus '" + focus + "'");
  ServiceFamily u;
  u.entries_.emplace(focus, std::move(svc));
  return u;
}

ServiceFamily ServiceFamily::with(const std::string& focus, ServiceInstance svc) const {
  ServiceFamily u = *this;
  auto it = u.entries_.find(focus);
  if (it == u.entries_.end()) throw std::out_of_range("focus '" + focus + "' not in family");
  it->second = std::move(svc);
  return u;
}

std::string ServiceFamily::encode() const {
  std::string out = "{";
  for (const auto& [f, svc] : entries_) {
    out += f;
    out += '=';
    out += svc.encode();
    out += ';';
  }
  out += '}';
  return out;
}

std::string ServiceFamily::describe() const {
  std::string out;
  for (const auto& [f, svc] : entries_) out += f + " = " + svc.describe() + "\n";
  return out;
}

ServiceFamily compose(const ServiceFamily& u, const ServiceFamily& v, Diagnostics* diag) {
  ServiceFamily out = u;
  for (const auto& [f, svc] : v.entries_) {
    auto [it, inserted] = out.entries_.emplace(f, svc);
    if (!inserted) {
      it->second = ServiceInstance::empty();
      if (diag)
        diag->warn("composition of families sharing focus '" + f +
                   "': the service under it collapses to the empty service");
    }
  }
  return out;
}

ServiceFamily encapsulate(const std::set<std::string>& fs, const ServiceFamily& u) {
  ServiceFamily out;
  for (const auto& [f, svc] : u.entries_)
    if (!fs.count(f)) out.entries_.emplace(f, svc);
  return out;
}

std::set<std::string> foci(const ServiceFamily& u) {
  std::set<std::string> out;
  for (const auto& [f, svc] : u.entries()) out.insert(f);
  return out;
}

namespace {

class BooleanRegister final : public ServiceBehavior {
 public:
  std::string id() const override { return "boolreg"; }
  SReply reply(const std::string& m, const State& s) const override {
    if (m == "set_t") return SReply::T;
    if (m == "set_f") return SReply::F;
    if (m == "get") return s.as_bool() ? SReply::T : SReply::F;
    return SReply::Blocked;
  }
  State effect(const std::string& m, const State& s) const override {
    if (m == "set_t") return State(true);
    if (m == "set_f") return State(false);
    return s;
  }
  std::string describe(const State& s) const override {
    return std::string("boolreg(") + (s.as_bool() ? "T" : "F") + ")";
  }
};

}  // namespace

ServiceInstance boolean_register(bool content) {
  static const auto behavior = std::make_shared<const BooleanRegister>();
  return ServiceInstance(behavior, State(content));
}

}  // namespace isproc
