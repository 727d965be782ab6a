#include "gridlab/base64.h"

#include <gtest/gtest.h>

#include "gridlab/rng.h"

namespace gridlab {
namespace {

std::vector<std::uint8_t> Bytes(std::string_view s) { return {s.begin(), s.end()}; }

TEST(Base64Test, Rfc4648Vectors) {
  const std::pair<const char*, const char*> cases[] = {
      {"", ""},         {"f", "Zg=="},         {"fo", "Zm8="},        {"foo", "Zm9v"},
      {"foob", "Zm9vYg=="}, {"fooba", "Zm9vYmE="}, {"foobar", "Zm9vYmFy"},
  };
  for (const auto& [plain, encoded] : cases) {
    EXPECT_EQ(Base64Encode(Bytes(plain)), encoded);
    EXPECT_EQ(Base64Decode(encoded), Bytes(plain));
  }
  EXPECT_EQ(Base64Encode(std::vector<std::uint8_t>{0xfb, 0xff}), "+/8=");
}

TEST(Base64Test, RejectsMalformedText) {
  for (const char* bad : {"Zm9", "Zm=v", "Z!==", "====", "Zg=", "Zm9vY===", "Zg==Zg=="}) {
    EXPECT_FALSE(Base64Decode(bad).has_value()) << bad;
  }
}

TEST(Base64Test, RandomRoundTrip) {
  Rng rng(1);
  for (int t = 0; t < 300; ++t) {
    std::vector<std::uint8_t> data(rng.Below(100));
    for (auto& b : data) b = static_cast<std::uint8_t>(rng.Below(256));
    const std::string text = Base64Encode(data);
    EXPECT_EQ(text.size(), (data.size() + 2) / 3 * 4);
    EXPECT_EQ(Base64Decode(text), data);
  }
}

}  // namespace
}  // namespace gridlab
