#ifndef GRIDLAB_SRC_EMBEDDED_DATA_H_
#define GRIDLAB_SRC_EMBEDDED_DATA_H_

#include <string_view>

// Contents of core/data, compiled in by CMake.
namespace gridlab::data {

std::string_view RwsMap();
std::string_view RwsSprites();
std::string_view RwsConfig();

}  // namespace gridlab::data

#endif  // GRIDLAB_SRC_EMBEDDED_DATA_H_
