// Copyright (c) 2026 glasswarp authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <string>
#include <vector>

#include "glasswarp/sync.hpp"

namespace glasswarp {

// Hosts an external velocity predictor speaking the stdin/stdout protocol
// described in docs/formats.md: little-endian framed requests ("GWDN", a
// message byte, branch/conditional flags, step index, sigma, the condition
// token and a shape-prefixed f32 tensor), answered by a status byte plus a
// shape-prefixed f32 tensor of the same shape. Any framing violation aborts
// with ErrorKind::Plugin.
class ProcessDenoiser : public Denoiser {
public:
    ProcessDenoiser(std::vector<std::string> argv, int branch);
    ~ProcessDenoiser() override;

    ProcessDenoiser(const ProcessDenoiser &) = delete;
    ProcessDenoiser &operator=(const ProcessDenoiser &) = delete;

    Tensor velocity(const Tensor &z, int step, double sigma,
                    std::string_view condition) override;
    Tensor velocity_uncond(const Tensor &z, int step, double sigma) override;

private:
    Tensor exchange(const Tensor &z, int step, double sigma,
                    std::string_view condition, bool conditional);

    int branch_ = 0;
    int child_pid_ = -1;
    int to_child_ = -1;
    int from_child_ = -1;
};

} // namespace glasswarp
