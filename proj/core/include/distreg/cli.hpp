#pragma once

namespace distreg {

// Entry point behind the distreg binary. Subcommands: gen, oneshot,
// asymptotic, multishot, worstcase, empirical, selftest.
// Exit codes: 0 success, 2 usage/config error, 3 numerical failure.
// DISTREG_SEED in the environment supplies the seed when --seed is absent.
int cli_main(int argc, const char* const* argv);

}  // namespace distreg
