#include "gridlab/properties.h"

#include "gridlab/errors.h"

namespace gridlab {

void PropertyTree::Declare(std::string path, std::string value, bool writable,
                           Validator validator) {
  if (path.empty() || path.front() == '/' || path.back() == '/') {
    throw ConfigError("malformed property path '" + path + "'");
  }
  leaves_[std::move(path)] = Leaf{std::move(value), writable, std::move(validator)};
}

const PropertyTree::Leaf& PropertyTree::Get(std::string_view path) const {
  auto it = leaves_.find(path);
  if (it == leaves_.end()) throw NotFound("no property '" + std::string(path) + "'");
  return it->second;
}

const std::string& PropertyTree::Read(std::string_view path) const {
  return Get(path).value;
}

bool PropertyTree::IsWritable(std::string_view path) const { return Get(path).writable; }

void PropertyTree::Write(std::string_view path, std::string value) {
  auto it = leaves_.find(path);
  if (it == leaves_.end()) throw NotFound("no property '" + std::string(path) + "'");
  if (!it->second.writable) {
    throw PermissionError("property '" + std::string(path) + "' is read-only");
  }
  if (it->second.validator) it->second.validator(value);
  it->second.value = std::move(value);
}

void PropertyTree::Set(std::string_view path, std::string value) {
  auto it = leaves_.find(path);
  if (it == leaves_.end()) throw NotFound("no property '" + std::string(path) + "'");
  it->second.value = std::move(value);
}

std::vector<std::string> PropertyTree::List(std::string_view prefix) const {
  std::vector<std::string> out;
  for (const auto& [path, leaf] : leaves_) {
    if (prefix.empty()) {
      out.push_back(path);
    } else if (path.size() > prefix.size() && path.compare(0, prefix.size(), prefix) == 0 &&
               (prefix.back() == '/' || path[prefix.size()] == '/')) {
      out.push_back(path);
    }
  }
  return out;
}

}  // namespace gridlab
