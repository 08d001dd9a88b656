// Copyright (c) 2026 glasswarp authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <stdexcept>
#include <string>

namespace glasswarp {

// Error categories; they map 1:1 onto the C API status codes and the CLI
// exit codes (input 2, geometry/physics 3, plug-in 4).
enum class ErrorKind {
    InvalidArgument,
    Io,
    Parse,
    Geometry,
    Plugin,
    Internal,
};

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string &what)
        : std::runtime_error(what), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string &message) {
    throw Error(kind, message);
}

} // namespace glasswarp
