// Copyright (c) 2026 glasswarp authors
// SPDX-License-Identifier: Apache-2.0

#include "glasswarp/process_denoiser.hpp"

#include <sys/wait.h>
#include <unistd.h>

#include <csignal>
#include <cstring>

#include "glasswarp/error.hpp"

namespace glasswarp {

namespace {

constexpr char kMagic[4] = {'G', 'W', 'D', 'N'};
constexpr uint8_t kMsgShutdown = 0;
constexpr uint8_t kMsgVelocity = 1;

void write_all(int fd, const void *data, size_t n) {
    const char *p = static_cast<const char *>(data);
    while (n > 0) {
        ssize_t w = ::write(fd, p, n);
        if (w < 0) {
            if (errno == EINTR) continue;
            fail(ErrorKind::Plugin, "plug-in pipe write failed");
        }
        p += w;
        n -= static_cast<size_t>(w);
    }
}

void read_all(int fd, void *data, size_t n) {
    char *p = static_cast<char *>(data);
    while (n > 0) {
        ssize_t r = ::read(fd, p, n);
        if (r < 0) {
            if (errno == EINTR) continue;
            fail(ErrorKind::Plugin, "plug-in pipe read failed");
        }
        if (r == 0) fail(ErrorKind::Plugin, "plug-in closed its output mid-message");
        p += r;
        n -= static_cast<size_t>(r);
    }
}

template <typename T>
void write_value(int fd, T v) {
    write_all(fd, &v, sizeof v);
}

template <typename T>
T read_value(int fd) {
    T v{};
    read_all(fd, &v, sizeof v);
    return v;
}

} // namespace

ProcessDenoiser::ProcessDenoiser(std::vector<std::string> argv, int branch)
    : branch_(branch) {
    if (argv.empty())
        fail(ErrorKind::InvalidArgument, "plug-in command must not be empty");
    // A dying plug-in must surface as EPIPE on write, not as SIGPIPE.
    signal(SIGPIPE, SIG_IGN);

    int to_pipe[2], from_pipe[2];
    if (::pipe(to_pipe) != 0 || ::pipe(from_pipe) != 0)
        fail(ErrorKind::Plugin, "failed to create plug-in pipes");

    pid_t pid = ::fork();
    if (pid < 0) fail(ErrorKind::Plugin, "failed to fork plug-in process");
    if (pid == 0) {
        ::dup2(to_pipe[0], STDIN_FILENO);
        ::dup2(from_pipe[1], STDOUT_FILENO);
        ::close(to_pipe[0]);
        ::close(to_pipe[1]);
        ::close(from_pipe[0]);
        ::close(from_pipe[1]);
        std::vector<char *> args;
        args.reserve(argv.size() + 1);
        for (auto &a : argv) args.push_back(a.data());
        args.push_back(nullptr);
        ::execvp(args[0], args.data());
        ::_exit(127);
    }
    ::close(to_pipe[0]);
    ::close(from_pipe[1]);
    child_pid_ = pid;
    to_child_ = to_pipe[1];
    from_child_ = from_pipe[0];
}

ProcessDenoiser::~ProcessDenoiser() {
    if (to_child_ >= 0) {
        // Best-effort shutdown message; the child also exits on EOF.
        char header[8] = {kMagic[0], kMagic[1], kMagic[2], kMagic[3],
                          kMsgShutdown, 0, 0, 0};
        ssize_t ignored = ::write(to_child_, header, sizeof header);
        (void)ignored;
        ::close(to_child_);
    }
    if (from_child_ >= 0) ::close(from_child_);
    if (child_pid_ > 0) {
        int status = 0;
        ::waitpid(child_pid_, &status, 0);
    }
}

Tensor ProcessDenoiser::exchange(const Tensor &z, int step, double sigma,
                                 std::string_view condition, bool conditional) {
    write_all(to_child_, kMagic, 4);
    write_value<uint8_t>(to_child_, kMsgVelocity);
    write_value<uint8_t>(to_child_, static_cast<uint8_t>(branch_));
    write_value<uint8_t>(to_child_, conditional ? 1 : 0);
    write_value<uint8_t>(to_child_, 0);
    write_value<uint32_t>(to_child_, static_cast<uint32_t>(step));
    write_value<double>(to_child_, sigma);
    write_value<uint32_t>(to_child_, static_cast<uint32_t>(condition.size()));
    if (!condition.empty()) write_all(to_child_, condition.data(), condition.size());

    write_value<uint32_t>(to_child_, static_cast<uint32_t>(z.shape.size()));
    for (int d : z.shape) write_value<uint32_t>(to_child_, static_cast<uint32_t>(d));
    std::vector<float> payload(z.data.size());
    for (size_t i = 0; i < payload.size(); ++i)
        payload[i] = static_cast<float>(z.data[i]);
    write_all(to_child_, payload.data(), payload.size() * sizeof(float));

    uint8_t status = read_value<uint8_t>(from_child_);
    if (status != 0) {
        uint32_t len = read_value<uint32_t>(from_child_);
        std::string message(len, '\0');
        if (len > 0) read_all(from_child_, message.data(), len);
        fail(ErrorKind::Plugin, "plug-in reported an error: " + message);
    }
    uint32_t ndim = read_value<uint32_t>(from_child_);
    if (ndim != z.shape.size())
        fail(ErrorKind::Plugin, "plug-in returned a tensor of different rank");
    Tensor out;
    out.shape.resize(ndim);
    size_t n = 1;
    for (uint32_t i = 0; i < ndim; ++i) {
        out.shape[i] = static_cast<int>(read_value<uint32_t>(from_child_));
        if (out.shape[i] != z.shape[i])
            fail(ErrorKind::Plugin, "plug-in returned a tensor of different shape");
        n *= static_cast<size_t>(out.shape[i]);
    }
    std::vector<float> result(n);
    read_all(from_child_, result.data(), n * sizeof(float));
    out.data.resize(n);
    for (size_t i = 0; i < n; ++i) out.data[i] = static_cast<double>(result[i]);
    return out;
}

Tensor ProcessDenoiser::velocity(const Tensor &z, int step, double sigma,
                                 std::string_view condition) {
    return exchange(z, step, sigma, condition, true);
}

Tensor ProcessDenoiser::velocity_uncond(const Tensor &z, int step, double sigma) {
    return exchange(z, step, sigma, {}, false);
}

} // namespace glasswarp
