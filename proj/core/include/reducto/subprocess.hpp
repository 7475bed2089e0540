#pragma once

#include <chrono>
#include <string>
#include <string_view>
#include <vector>

namespace reducto {

struct ProcessResult {
  enum class Status { exited, signaled, timed_out, spawn_failed };

  Status status = Status::spawn_failed;
  int exit_code = -1;
  int signal = 0;
  std::string out;

  bool ok() const noexcept { return status == Status::exited; }
};

/// Runs argv[0] (PATH lookup) in its own process group with `input` on
/// standard input, collecting standard output. The whole group is killed
/// once `timeout` elapses. Standard error is discarded. POSIX only; SIGPIPE
/// is ignored process-wide on first use.
ProcessResult run_process(const std::vector<std::string>& argv, std::string_view input,
                          std::chrono::milliseconds timeout);

}  // namespace reducto
