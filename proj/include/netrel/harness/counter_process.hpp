#pragma once

#include "netrel/dyadic.hpp"

#include <chrono>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>

namespace netrel {

inline constexpr std::chrono::milliseconds kDefaultCounterTimeout{600'000};

// Count from the last stdout line of the form "s mc <integer>".
std::optional<BigInt> parse_counter_output(std::string_view stdout_text);

// Runs `command <dimacs_path>` through /bin/sh and parses its stdout.
// Throws CounterError on nonzero exit, timeout, or a missing count line; the
// error carries the captured stdout and stderr.
BigInt invoke_counter(const std::filesystem::path& dimacs_path, const std::string& command,
                      std::chrono::milliseconds timeout = kDefaultCounterTimeout);

} // namespace netrel
