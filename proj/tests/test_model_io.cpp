#include <doctest.h>

#include "test_util.hpp"
#include "trinorm/model_io.hpp"

using namespace trinorm;

namespace {

FittedTransform small_model(std::uint64_t seed) {
    Rng rng(seed);
    const DataMatrix X = tt::skewed_data(120, 2, rng);
    DescentConfig cfg;
    cfg.max_iters = 300;
    cfg.seed = seed;
    return fit(X, cfg).model;
}

} // namespace

TEST_SUITE("model_io") {

TEST_CASE("round trip is bit-exact and preserves behavior") {
    const FittedTransform model = small_model(7);
    const std::string doc = serialize(model);
    const FittedTransform back = deserialize(doc);

    CHECK(back.n == model.n);
    CHECK(back.m == model.m);
    CHECK(back.whitening.linear == model.whitening.linear);
    CHECK(back.whitening.offset == model.whitening.offset);
    CHECK(back.lift.alphas == model.lift.alphas);
    CHECK(back.lift.betas == model.lift.betas);
    CHECK(back.lift.z_whitening.linear == model.lift.z_whitening.linear);
    CHECK(back.lift.z_whitening.offset == model.lift.z_whitening.offset);
    CHECK(back.rotation == model.rotation);
    CHECK(back.residual_norm == model.residual_norm);
    CHECK(serialize(back) == doc);

    Rng rng(8);
    const DataMatrix probe = tt::gaussian_data(50, 2, rng);
    const DataMatrix y1 = transform(model, probe);
    const DataMatrix y2 = transform(back, probe);
    CHECK(y1 == y2);
}

TEST_CASE("malformed documents are rejected") {
    const FittedTransform model = small_model(9);
    const std::string doc = serialize(model);

    CHECK_THROWS_AS(deserialize("not json at all"), MalformedDocument);
    CHECK_THROWS_AS(deserialize("[1,2,3]"), MalformedDocument);

    // strip the rotation field
    {
        auto pos = doc.find("\"rotation\"");
        REQUIRE(pos != std::string::npos);
        std::string damaged = doc;
        // replace the key so the field goes missing
        damaged.replace(pos, 10, "\"rotat!on\"");
        CHECK_THROWS_AS(deserialize(damaged), MalformedDocument);
    }

    // wrong version
    {
        auto pos = doc.find("\"version\": \"1\"");
        REQUIRE(pos != std::string::npos);
        std::string other = doc;
        other.replace(pos, 14, "\"version\": \"2\"");
        CHECK_THROWS_AS(deserialize(other), VersionMismatch);
    }

    // shape lies about itself
    {
        auto pos = doc.find("\"n\": 2");
        REQUIRE(pos != std::string::npos);
        std::string other = doc;
        other.replace(pos, 6, "\"n\": 3");
        CHECK_THROWS_AS(deserialize(other), MalformedDocument);
    }

    // wrong field type
    {
        auto pos = doc.find("\"rows\": 2");
        REQUIRE(pos != std::string::npos);
        std::string other = doc;
        other.replace(pos, 9, "\"rows\": \"x\"");
        CHECK_THROWS_AS(deserialize(other), MalformedDocument);
    }
}

TEST_CASE("non-orthogonal rotation is rejected") {
    FittedTransform model = small_model(11);
    model.rotation(0, 1) += 1e-3;
    const std::string doc = serialize(model);
    CHECK_THROWS_AS(deserialize(doc), MalformedDocument);
}

TEST_CASE("save and load through a file") {
    const FittedTransform model = small_model(13);
    const std::string path = "/tmp/trinorm_test_model.json";
    save_model(model, path);
    const FittedTransform back = load_model(path);
    CHECK(serialize(back) == serialize(model));

    CHECK_THROWS_AS(load_model("/nonexistent/dir/model.json"), Error);
    CHECK_THROWS_AS(save_model(model, "/nonexistent/dir/model.json"), Error);
}

} // TEST_SUITE
