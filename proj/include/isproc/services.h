#pragma once

// Services, service families and the family operators: singleton f.H,
// composition (+), encapsulation d_F and foci.

#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "isproc/state.h"

namespace isproc {

// Service reply; Blocked is the rejection value.
enum class SReply { T, F, Blocked };

// Reply/effect functions over an explicit state. Any method that is
// answered with Blocked sends the service to the empty service.
class ServiceBehavior {
 public:
  virtual ~ServiceBehavior() = default;
  // Identity used for equality of services and in diagnostics.
  virtual std::string id() const = 0;
  virtual SReply reply(const std::string& method, const State& s) const = 0;
  // Only consulted when reply() is not Blocked.
  virtual State effect(const std::string& method, const State& s) const = 0;
  // Family-file spelling of this behaviour in state s, e.g. "boolreg(T)".
  virtual std::string describe(const State& s) const = 0;
};

class ServiceInstance {
 public:
  ServiceInstance(std::shared_ptr<const ServiceBehavior> behavior, State state);

  // The unique service that rejects every method.
  static ServiceInstance empty();

  bool is_empty() const { return !state_.has_value(); }
  const State& state() const { return *state_; }
  const ServiceBehavior& behavior() const { return *behavior_; }
  std::shared_ptr<const ServiceBehavior> behavior_ptr() const { return behavior_; }

  struct Processed;
  Processed process(const std::string& method) const;

  std::string encode() const;
  std::string describe() const;

  bool operator==(const ServiceInstance& o) const;

 private:
  ServiceInstance() = default;
  std::shared_ptr<const ServiceBehavior> behavior_;
  std::optional<State> state_;
};

struct ServiceInstance::Processed {
  SReply reply;
  ServiceInstance next;
};

class Diagnostics {
 public:
  void warn(std::string msg) { messages_.push_back(std::move(msg)); }
  const std::vector<std::string>& messages() const { return messages_; }
  bool empty() const { return messages_.empty(); }

 private:
  std::vector<std::string> messages_;
};

class ServiceFamily {
 public:
  ServiceFamily() = default;

  static ServiceFamily singleton(const std::string& focus, ServiceInstance svc);

  bool empty() const { return entries_.empty(); }
  std::size_t size() const { return entries_.size(); }
  bool contains(const std::string& focus) const { return entries_.count(focus) != 0; }
  const ServiceInstance& at(const std::string& focus) const { return entries_.at(focus); }
  const std::map<std::string, ServiceInstance>& entries() const { return entries_; }

  // Copy with the service under `focus` replaced (focus must be present).
  ServiceFamily with(const std::string& focus, ServiceInstance svc) const;

  std::string encode() const;
  // One "focus = behaviour(args)" line per entry, sorted by focus.
  std::string describe() const;

  bool operator==(const ServiceFamily& o) const { return entries_ == o.entries_; }

 private:
  friend ServiceFamily compose(const ServiceFamily&, const ServiceFamily&, Diagnostics*);
  friend ServiceFamily encapsulate(const std::set<std::string>&, const ServiceFamily&);
  std::map<std::string, ServiceInstance> entries_;
};

// u (+) v. A focus present on both sides maps to the empty service; a
// warning is recorded in `diag` when given.
ServiceFamily compose(const ServiceFamily& u, const ServiceFamily& v,
                      Diagnostics* diag = nullptr);
ServiceFamily encapsulate(const std::set<std::string>& foci, const ServiceFamily& u);
std::set<std::string> foci(const ServiceFamily& u);

ServiceInstance boolean_register(bool content);

}  // namespace isproc
