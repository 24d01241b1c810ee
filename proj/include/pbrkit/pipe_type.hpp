#pragma once

#include <array>
#include <string_view>

namespace pbrkit {

enum class PipeType { straight, elbow, tee, cross };

inline constexpr std::array<PipeType, 4> kAllPipeTypes = {PipeType::straight, PipeType::elbow,
                                                          PipeType::tee, PipeType::cross};

std::string_view to_string(PipeType type);
PipeType parse_pipe_type(std::string_view name);

}  // namespace pbrkit
