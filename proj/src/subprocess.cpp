#include "vankamp/subprocess.hpp"

#include <fcntl.h>
#include <signal.h>
#include <sys/wait.h>
#include <unistd.h>

#include <cerrno>
#include <cstring>

namespace vk {

LineSubprocess::LineSubprocess(std::vector<std::string> argv) : argv_(std::move(argv)) {
  if (argv_.empty()) throw ParseError("subprocess command is empty");
  // A child exiting mid-protocol must surface as an error, not a SIGPIPE.
  static const bool sigpipe_ignored = [] {
    signal(SIGPIPE, SIG_IGN);
    return true;
  }();
  (void)sigpipe_ignored;
  int to_child[2], from_child[2];
  if (pipe(to_child) != 0 || pipe(from_child) != 0)
    throw ParseError(std::string("pipe: ") + std::strerror(errno));
  pid_ = fork();
  if (pid_ < 0) throw ParseError(std::string("fork: ") + std::strerror(errno));
  if (pid_ == 0) {
    dup2(to_child[0], STDIN_FILENO);
    dup2(from_child[1], STDOUT_FILENO);
    close(to_child[0]);
    close(to_child[1]);
    close(from_child[0]);
    close(from_child[1]);
    std::vector<char*> cargv;
    for (std::string& s : argv_) cargv.push_back(s.data());
    cargv.push_back(nullptr);
    execvp(cargv[0], cargv.data());
    _exit(127);
  }
  close(to_child[0]);
  close(from_child[1]);
  in_fd_ = to_child[1];
  out_fd_ = from_child[0];
}

LineSubprocess::~LineSubprocess() {
  if (in_fd_ >= 0) close(in_fd_);
  if (out_fd_ >= 0) close(out_fd_);
  if (pid_ > 0) {
    kill(pid_, SIGTERM);
    waitpid(pid_, nullptr, 0);
  }
}

void LineSubprocess::send_line(const std::string& line) {
  std::string out = line + "\n";
  size_t off = 0;
  while (off < out.size()) {
    ssize_t n = write(in_fd_, out.data() + off, out.size() - off);
    if (n < 0) {
      if (errno == EINTR) continue;
      throw ParseError("subprocess " + argv_[0] + ": write failed: " + std::strerror(errno));
    }
    off += static_cast<size_t>(n);
  }
}

bool LineSubprocess::try_recv_line(std::string& line) {
  for (;;) {
    size_t nl = buf_.find('\n');
    if (nl != std::string::npos) {
      line = buf_.substr(0, nl);
      buf_.erase(0, nl + 1);
      if (!line.empty() && line.back() == '\r') line.pop_back();
      return true;
    }
    char chunk[4096];
    ssize_t n = read(out_fd_, chunk, sizeof chunk);
    if (n < 0) {
      if (errno == EINTR) continue;
      throw ParseError("subprocess " + argv_[0] + ": read failed: " + std::strerror(errno));
    }
    if (n == 0) {
      if (buf_.empty()) return false;
      line = std::move(buf_);
      buf_.clear();
      return true;
    }
    buf_.append(chunk, static_cast<size_t>(n));
  }
}

std::string LineSubprocess::recv_line() {
  std::string line;
  if (!try_recv_line(line))
    throw ParseError("subprocess " + argv_[0] + ": closed its output mid-protocol");
  return line;
}

SubprocessOracle::SubprocessOracle(Alphabet a, std::vector<std::string> argv)
    : WordProblemOracle(std::move(a)), child_(std::move(argv)) {}

bool SubprocessOracle::decide(const Word& reduced) const {
  if (reduced.empty()) return true;
  child_.send_line(word_to_string(alphabet(), reduced));
  std::string resp = child_.recv_line();
  if (resp == "0") return true;
  if (resp == "1") return false;
  throw ParseError("oracle protocol violation: expected 0 or 1, got \"" + resp + "\"");
}

}  // namespace vk
