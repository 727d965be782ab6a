#include "gridlab/properties.h"

#include <gtest/gtest.h>

#include "gridlab/errors.h"

namespace gridlab {
namespace {

PropertyTree Tree() {
  PropertyTree t;
  t.Declare("world/width", "24", false);
  t.Declare("rws/timer", "1000", true, [](const std::string& v) {
    if (v.empty() || v.find_first_not_of("0123456789") != std::string::npos) {
      throw ConfigError("not a number");
    }
  });
  t.Declare("rws/beam/length", "3", true);
  return t;
}

TEST(PropertiesTest, ReadsAndWrites) {
  PropertyTree t = Tree();
  EXPECT_EQ(t.Read("world/width"), "24");
  t.Write("rws/timer", "500");
  EXPECT_EQ(t.Read("rws/timer"), "500");
}

TEST(PropertiesTest, Errors) {
  PropertyTree t = Tree();
  EXPECT_THROW(t.Read("world/depth"), NotFound);
  EXPECT_THROW(t.Write("world/depth", "1"), NotFound);
  EXPECT_THROW(t.Write("world/width", "30"), PermissionError);
  EXPECT_THROW(t.Write("rws/timer", "soon"), ConfigError);
  EXPECT_EQ(t.Read("rws/timer"), "1000");
  EXPECT_THROW(t.Declare("/abs", "x", true), ConfigError);
  EXPECT_THROW(t.Declare("", "x", true), ConfigError);
}

TEST(PropertiesTest, SetBypassesPermissions) {
  PropertyTree t = Tree();
  t.Set("world/width", "12");
  EXPECT_EQ(t.Read("world/width"), "12");
  EXPECT_FALSE(t.IsWritable("world/width"));
}

TEST(PropertiesTest, ListByPrefix) {
  const PropertyTree t = Tree();
  EXPECT_EQ(t.List("rws"), (std::vector<std::string>{"rws/beam/length", "rws/timer"}));
  EXPECT_EQ(t.List("rws/beam"), (std::vector<std::string>{"rws/beam/length"}));
  EXPECT_TRUE(t.List("rw").empty());
  EXPECT_EQ(t.List().size(), 3u);
}

}  // namespace
}  // namespace gridlab
