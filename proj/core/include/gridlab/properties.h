#ifndef GRIDLAB_PROPERTIES_H_
#define GRIDLAB_PROPERTIES_H_

#include <functional>
#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace gridlab {

// Hierarchical string parameters addressed by '/'-separated paths such as
// "world/width". Leaves hold strings and are read-only or writable.
class PropertyTree {
 public:
  // Called before a write lands; throws ConfigError to reject the value.
  using Validator = std::function<void(const std::string& value)>;

  // Declares or redeclares a leaf.
  void Declare(std::string path, std::string value, bool writable,
               Validator validator = {});

  // Throws NotFound for unknown paths.
  const std::string& Read(std::string_view path) const;

  // Throws NotFound for unknown paths, PermissionError for read-only leaves.
  void Write(std::string_view path, std::string value);

  // Sets a leaf regardless of its writable flag (environment-side updates).
  void Set(std::string_view path, std::string value);

  bool Contains(std::string_view path) const { return leaves_.count(path) != 0; }
  bool IsWritable(std::string_view path) const;

  // Leaf paths under `prefix` (all leaves for an empty prefix), sorted.
  std::vector<std::string> List(std::string_view prefix = {}) const;

 private:
  struct Leaf {
    std::string value;
    bool writable = false;
    Validator validator;
  };

  const Leaf& Get(std::string_view path) const;

  std::map<std::string, Leaf, std::less<>> leaves_;
};

}  // namespace gridlab

#endif  // GRIDLAB_PROPERTIES_H_
