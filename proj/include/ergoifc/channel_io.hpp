#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include "ergoifc/channel.hpp"

namespace ergoifc {

/// Contents of a channel file: the fading law and the power budget.
struct ChannelSpec {
  FadingProcess process;
  PowerBudget budget;
};

/**
 * Parses {"states":[{"g11","g12","g21","g22","p"}...],"budget":{"p1","p2"}}.
 * Throws InvalidInput whose message starts with the offending field path.
 */
ChannelSpec parse_channel_json(std::string_view text);

ChannelSpec load_channel_file(const std::filesystem::path& path);

std::string to_channel_json(const FadingProcess& process, const PowerBudget& budget);

}  // namespace ergoifc
