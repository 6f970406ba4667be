#include <gtest/gtest.h>

#include "nodom/errors.hpp"
#include "nodom/geometry.hpp"
#include "nodom/serialization.hpp"

using namespace nodom;

TEST(Serialization, ComplexRoundTrip) {
  const Complex z(0.125, -3.5);
  EXPECT_EQ(complex_from_json(to_json_value(z)), z);
  EXPECT_EQ(to_json_value(z).dump(), "[0.125,-3.5]");
}

TEST(Serialization, DomainRoundTrip) {
  const std::vector<ElementaryDomain> ds{make_disk({1.0, 0.5}, 0.25), make_exterior_disk({0.0, 0.1}, 2.0),
                                         make_half_plane({0.5, 0.0}, {1.0, 0.0})};
  for (const auto& d : ds) {
    const auto back = domain_from_json(json::parse(to_json_value(d).dump()));
    EXPECT_EQ(to_json_value(back), to_json_value(d));
    EXPECT_STREQ(kind_name(back), kind_name(d));
  }
}

TEST(Serialization, ConfigurationRoundTrip) {
  const auto c = sample_configuration(9);
  const auto back = configuration_from_json(json::parse(to_json_value(c).dump()));
  EXPECT_EQ(to_json_value(back), to_json_value(c));
  EXPECT_EQ(evaluate_J(0.5, back), evaluate_J(0.5, c));
}

TEST(Serialization, MalformedShapes) {
  EXPECT_THROW(domain_from_json(json::parse(R"({"center":[0,0],"radius":1})")), DomainError);
  EXPECT_THROW(domain_from_json(json::parse(R"({"kind":"square","center":[0,0]})")), DomainError);
  EXPECT_THROW(domain_from_json(json::parse(R"({"kind":"disk","center":[0],"radius":1})")), DomainError);
  EXPECT_THROW(domain_from_json(json::parse(R"({"kind":"disk","center":[0,0],"radius":"1"})")), DomainError);
  EXPECT_THROW(domain_from_json(json::parse(R"({"kind":"disk","center":[0,0],"radius":-1})")), DomainError);
  EXPECT_THROW(domain_from_json(json::parse(R"({"kind":"half_plane","point":[0,0]})")), DomainError);
  EXPECT_THROW(domain_from_json(json::parse("[1,2]")), DomainError);
}

TEST(Serialization, ConfigurationRejectsWrongInfinityKind) {
  auto j = to_json_value(symmetric_configuration());
  j["domain_at_infinity"] = to_json_value(ElementaryDomain(make_disk({0.0, 0.0}, 3.0)));
  EXPECT_THROW(configuration_from_json(j), ConfigurationError);
}

TEST(Serialization, ReportsCarryAllFields) {
  const auto v = to_json_value(verify_inequality(0.5, 50, 1));
  for (const char* k : {"gamma", "samples", "seed", "violations", "symmetric_value", "max_J", "max_ratio"}) {
    EXPECT_TRUE(v.contains(k)) << k;
  }
  InequalityCheck c{"zero", 1.0, 2.0, 0.5, 0.01, 0.001, 0.031, CheckStatus::holds};
  const auto jc = to_json_value(c);
  EXPECT_EQ(jc.at("status"), "holds");
  EXPECT_EQ(jc.at("name"), "zero");
}
