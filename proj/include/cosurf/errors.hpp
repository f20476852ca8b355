#pragma once

#include <stdexcept>
#include <string>

namespace cosurf {

enum class ErrorKind {
  domain,             // argument outside the operation's domain
  invalid_point,      // ambient point off the model manifold
  pole_singularity,   // gradient field requested at the pole
  immersion,          // degenerate first fundamental form
  domain_too_small,   // parameter domain does not cover the requested ball
  critical_radius,    // level set meets a critical point of r
  excluded_region,    // finite-difference stencil too close to the pole
  not_applicable,     // verdict hypothesis not met (e.g. non-minimal surface)
  unknown_surface,
  construction,       // catalog surface failed its own validation
  config,
};

const char* to_string(ErrorKind kind) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace cosurf
