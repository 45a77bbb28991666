#pragma once

#include <optional>
#include <string_view>

namespace dstbc::cli {

/// Built-in experiment files, looked up by file name.
[[nodiscard]] std::optional<std::string_view> embedded_config(std::string_view name);

}  // namespace dstbc::cli
