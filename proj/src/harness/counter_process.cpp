#include "netrel/harness/counter_process.hpp"

#include "netrel/errors.hpp"

#include <algorithm>
#include <cerrno>
#include <csignal>
#include <cstring>
#include <poll.h>
#include <sstream>
#include <sys/wait.h>
#include <unistd.h>
#include <vector>

namespace netrel {

std::optional<BigInt> parse_counter_output(std::string_view text) {
    std::optional<BigInt> found;
    std::istringstream in{std::string(text)};
    std::string line;
    while (std::getline(in, line)) {
        std::istringstream fields(line);
        std::string s, mc, value, extra;
        if (!(fields >> s >> mc >> value) || s != "s" || mc != "mc" || (fields >> extra)) continue;
        if (value.find_first_not_of("0123456789") != std::string::npos) continue;
        found = BigInt(value);
    }
    return found;
}

namespace {

std::string shell_quote(const std::string& s) {
    std::string out = "'";
    for (char c : s) {
        if (c == '\'')
            out += "'\\''";
        else
            out += c;
    }
    return out + "'";
}

struct Pipe {
    int fd[2] = {-1, -1};
    Pipe() {
        if (pipe(fd) != 0) throw CounterError(std::string("pipe failed: ") + std::strerror(errno), "");
    }
    ~Pipe() {
        for (int f : fd)
            if (f >= 0) close(f);
    }
    void close_end(int i) {
        if (fd[i] >= 0) close(fd[i]);
        fd[i] = -1;
    }
};

} // namespace

BigInt invoke_counter(const std::filesystem::path& dimacs_path, const std::string& command,
                      std::chrono::milliseconds timeout) {
    if (!std::filesystem::exists(dimacs_path))
        throw CounterError("CNF file does not exist: " + dimacs_path.string(), "");
    const std::string full = command + " " + shell_quote(dimacs_path.string());

    Pipe out, err;
    const pid_t pid = fork();
    if (pid < 0) throw CounterError(std::string("fork failed: ") + std::strerror(errno), "");
    if (pid == 0) {
        setpgid(0, 0);
        dup2(out.fd[1], STDOUT_FILENO);
        dup2(err.fd[1], STDERR_FILENO);
        close(out.fd[0]);
        close(err.fd[0]);
        execl("/bin/sh", "sh", "-c", full.c_str(), static_cast<char*>(nullptr));
        _exit(127);
    }
    out.close_end(1);
    err.close_end(1);

    std::string captured_out, captured_err;
    const auto deadline = std::chrono::steady_clock::now() + timeout;
    bool timed_out = false;
    std::vector<pollfd> fds = {{out.fd[0], POLLIN, 0}, {err.fd[0], POLLIN, 0}};
    char buf[4096];
    while (fds[0].fd >= 0 || fds[1].fd >= 0) {
        const auto left = std::chrono::duration_cast<std::chrono::milliseconds>(deadline - std::chrono::steady_clock::now());
        if (left.count() <= 0) {
            timed_out = true;
            break;
        }
        const int ready = poll(fds.data(), fds.size(), static_cast<int>(std::min<long long>(left.count(), 1000)));
        if (ready < 0 && errno != EINTR) break;
        for (std::size_t i = 0; i < fds.size(); ++i) {
            if (fds[i].fd < 0 || !(fds[i].revents & (POLLIN | POLLHUP | POLLERR))) continue;
            const ssize_t n = read(fds[i].fd, buf, sizeof buf);
            if (n > 0) {
                (i == 0 ? captured_out : captured_err).append(buf, static_cast<std::size_t>(n));
            } else {
                fds[i].fd = -1;
            }
        }
    }

    if (timed_out) kill(-pid, SIGKILL);
    int status = 0;
    while (waitpid(pid, &status, 0) < 0 && errno == EINTR) {
    }
    const std::string captured = captured_out + captured_err;
    if (timed_out)
        throw CounterError("counter timed out after " + std::to_string(timeout.count()) + " ms", captured);
    if (!WIFEXITED(status) || WEXITSTATUS(status) != 0) {
        const std::string why = WIFEXITED(status) ? "exited with status " + std::to_string(WEXITSTATUS(status))
                                                  : "was terminated by a signal";
        throw CounterError("counter " + why, captured);
    }
    auto count = parse_counter_output(captured_out);
    if (!count) throw CounterError("counter output has no 's mc <count>' line", captured);
    return *count;
}

} // namespace netrel
