#pragma once

#include <string>
#include <vector>

#include "vankamp/oracle.hpp"

namespace vk {

/// A line-oriented child process: writes request lines, reads response
/// lines, both flushed per line. Closing the handle terminates the child.
class LineSubprocess {
 public:
  explicit LineSubprocess(std::vector<std::string> argv);
  ~LineSubprocess();

  LineSubprocess(const LineSubprocess&) = delete;
  LineSubprocess& operator=(const LineSubprocess&) = delete;

  /// Writes one line (newline appended) and flushes.
  void send_line(const std::string& line);

  /// Blocking read of one response line, without the newline. Throws
  /// ParseError when the child closed its output.
  std::string recv_line();

  /// Like recv_line but reports end-of-stream as false instead of throwing.
  bool try_recv_line(std::string& line);

  const std::vector<std::string>& argv() const { return argv_; }

 private:
  std::vector<std::string> argv_;
  int pid_ = -1;
  int in_fd_ = -1;   // child's stdin (we write)
  int out_fd_ = -1;  // child's stdout (we read)
  std::string buf_;
};

/// Word-problem oracle backed by an external command. Protocol: one word per
/// request line, symbols separated by spaces, inverses written `x^-1`;
/// the command answers `0` (trivial) or `1` (nontrivial) per line.
class SubprocessOracle : public WordProblemOracle {
 public:
  SubprocessOracle(Alphabet a, std::vector<std::string> argv);

 protected:
  bool decide(const Word& reduced) const override;

 private:
  mutable LineSubprocess child_;
};

}  // namespace vk
