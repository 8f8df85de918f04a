#pragma once

namespace wenofv {

inline constexpr const char* code_version = "0.1.0";

}  // namespace wenofv
