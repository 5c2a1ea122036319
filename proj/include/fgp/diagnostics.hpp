#pragma once

#include <functional>
#include <string_view>

namespace fgp {

using WarningHandler = std::function<void(std::string_view)>;

/// Routes non-fatal diagnostics (renormalized inputs, finite-difference
/// fallbacks). The default handler writes to stderr. Install handlers at
/// startup; the handler itself must be safe to call from several threads.
void set_warning_handler(WarningHandler handler);
void warn(std::string_view message);

/// Installs a handler for the lifetime of the object and restores the
/// previous one afterwards.
class ScopedWarningHandler {
 public:
  explicit ScopedWarningHandler(WarningHandler handler);
  ~ScopedWarningHandler();
  ScopedWarningHandler(const ScopedWarningHandler&) = delete;
  ScopedWarningHandler& operator=(const ScopedWarningHandler&) = delete;

 private:
  WarningHandler previous_;
};

}  // namespace fgp
