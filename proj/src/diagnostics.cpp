#include "fgp/diagnostics.hpp"

#include <iostream>
#include <mutex>
#include <utility>

namespace fgp {
namespace {

std::mutex& handler_mutex() {
  static std::mutex m;
  return m;
}

WarningHandler& handler_slot() {
  static WarningHandler h = [](std::string_view msg) {
    std::cerr << "warning: " << msg << '\n';
  };
  return h;
}

WarningHandler exchange_handler(WarningHandler next) {
  std::lock_guard lock(handler_mutex());
  return std::exchange(handler_slot(), std::move(next));
}

}  // namespace

void set_warning_handler(WarningHandler handler) { exchange_handler(std::move(handler)); }

void warn(std::string_view message) {
  WarningHandler h;
  {
    std::lock_guard lock(handler_mutex());
    h = handler_slot();
  }
  if (h) h(message);
}

ScopedWarningHandler::ScopedWarningHandler(WarningHandler handler)
    : previous_(exchange_handler(std::move(handler))) {}

ScopedWarningHandler::~ScopedWarningHandler() { exchange_handler(std::move(previous_)); }

}  // namespace fgp
