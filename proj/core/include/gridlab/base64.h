#ifndef GRIDLAB_BASE64_H_
#define GRIDLAB_BASE64_H_

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace gridlab {

// RFC 4648 base64, standard alphabet, '=' padding, no line breaks.
std::string Base64Encode(std::span<const std::uint8_t> bytes);
// nullopt on characters outside the alphabet, bad padding or bad length.
std::optional<std::vector<std::uint8_t>> Base64Decode(std::string_view text);

}  // namespace gridlab

#endif  // GRIDLAB_BASE64_H_
