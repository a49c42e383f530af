#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace moralgraph {

// Bad input: unknown vertex, ordering over the wrong vertex set, cyclic DAG,
// disconnected instance handed to a gadget builder.
class DomainError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A caller-supplied object breaks an operation's contract, e.g. an excess
// edge that does not lie inside the eliminated vertex's neighbourhood.
class ContractViolation : public std::logic_error {
 public:
  ContractViolation(const std::string& what, std::size_t step)
      : std::logic_error(what + " (step " + std::to_string(step) + ")"), step_(step) {}

  std::size_t step() const noexcept { return step_; }

 private:
  std::size_t step_;
};

// An exact or exhaustive routine was asked to run beyond its configured cap.
class ResourceError : public std::runtime_error {
 public:
  ResourceError(const std::string& what, std::size_t required, std::size_t cap)
      : std::runtime_error(what + ": requires cap >= " + std::to_string(required) +
                           ", configured cap is " + std::to_string(cap)),
        required_(required),
        cap_(cap) {}

  std::size_t required() const noexcept { return required_; }
  std::size_t cap() const noexcept { return cap_; }

 private:
  std::size_t required_;
  std::size_t cap_;
};

}  // namespace moralgraph
