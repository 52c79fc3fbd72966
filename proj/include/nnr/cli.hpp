#pragma once

namespace nnr::cli {

// Exit codes: 0 success, 1 computational error (JSON on stderr), 2 usage error.
int dispatch(int argc, const char* const* argv);

}  // namespace nnr::cli
