#include "nmf/functor_spec.hpp"

#include <cmath>

#include "nmf/errors.hpp"
#include "nmf/text.hpp"

namespace nmf {

namespace {

constexpr int kMaxPower = 64;

std::string trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t");
    return std::string(s.substr(first, last - first + 1));
}

// '+' separates stages unless it is part of a number ("1e+3", ",+2", ":+1").
std::vector<std::string> split_chain(std::string_view text) {
    std::vector<std::string> parts;
    std::size_t start = 0;
    for (std::size_t i = 0; i < text.size(); ++i) {
        if (text[i] != '+') continue;
        const char prev = i > 0 ? text[i - 1] : '\0';
        if (prev == 'e' || prev == 'E' || prev == ',' || prev == ':') continue;
        parts.push_back(trim(text.substr(start, i - start)));
        start = i + 1;
    }
    parts.push_back(trim(text.substr(start)));
    return parts;
}

void validate(const FunctorStage& stage) {
    using Kind = FunctorStage::Kind;
    switch (stage.kind) {
        case Kind::identity: return;
        case Kind::sum_power:
        case Kind::diff_power:
            if (stage.power < 0 || stage.power > kMaxPower) {
                throw ValidationError("wrapper power must lie in [0, " + std::to_string(kMaxPower) + "]");
            }
            return;
        case Kind::sum_lambda:
        case Kind::diff_lambda:
            if (!(stage.lambda >= 0.0 && stage.lambda <= 1.0)) {
                throw ValidationError("wrapper lambda must lie in [0, 1]");
            }
            return;
        case Kind::conv:
            if (stage.weights.empty()) throw ValidationError("conv kernel needs coefficients");
            Kernel::band(stage.weights).require_invertible();
            return;
        case Kind::corr:
            if (stage.weights.empty()) throw ValidationError("corr needs weights");
            for (double w : stage.weights) {
                if (!std::isfinite(w)) throw ValidationError("corr weights must be finite");
                if (std::abs(w) < kInvertibleHead) throw NonInvertibleKernelError(w);
            }
            return;
    }
}

int parse_power(std::string_view text) {
    const long long n = parse_integer(text, "wrapper power");
    if (n < 0 || n > kMaxPower) throw ValidationError("wrapper power must lie in [0, " + std::to_string(kMaxPower) + "]");
    return static_cast<int>(n);
}

FunctorStage parse_stage(const std::string& token) {
    using Kind = FunctorStage::Kind;
    FunctorStage stage;
    if (token == "id") return stage;
    if (token == "S" || token == "D") {
        stage.kind = token == "S" ? Kind::sum_power : Kind::diff_power;
        stage.power = 1;
        return stage;
    }
    if (token.starts_with("S^") || token.starts_with("D^")) {
        stage.kind = token[0] == 'S' ? Kind::sum_power : Kind::diff_power;
        stage.power = parse_power(std::string_view(token).substr(2));
        return stage;
    }
    if (token.starts_with("S_l:") || token.starts_with("D_l:")) {
        stage.kind = token[0] == 'S' ? Kind::sum_lambda : Kind::diff_lambda;
        stage.lambda = parse_double(std::string_view(token).substr(4), "wrapper lambda");
        return stage;
    }
    if (token.starts_with("conv:") || token.starts_with("corr:")) {
        stage.kind = token[1] == 'o' && token[2] == 'n' ? Kind::conv : Kind::corr;
        stage.weights = parse_double_list(std::string_view(token).substr(5), "kernel coefficient");
        return stage;
    }
    throw ParseError("unknown wrapper stage \"" + token +
                     "\" (expected id, S^n, D^n, S_l:x, D_l:x, conv:w0,..., corr:w0,...)");
}

std::string join_weights(const std::vector<double>& weights) {
    std::string out;
    for (std::size_t i = 0; i < weights.size(); ++i) {
        if (i) out += ',';
        out += format_shortest(weights[i]);
    }
    return out;
}

void append_elementary(const FunctorStage& stage, std::vector<std::unique_ptr<Aggregator>>& out) {
    using Kind = FunctorStage::Kind;
    switch (stage.kind) {
        case Kind::identity: return;
        case Kind::sum_power:
            for (int i = 0; i < stage.power; ++i) out.push_back(std::make_unique<PrefixSumAggregator>());
            return;
        case Kind::diff_power:
            for (int i = 0; i < stage.power; ++i) {
                out.push_back(std::make_unique<BandConvAggregator>(Kernel::band({1.0, -1.0})));
            }
            return;
        case Kind::sum_lambda: out.push_back(std::make_unique<GeometricConvAggregator>(1.0, stage.lambda)); return;
        case Kind::diff_lambda:
            out.push_back(std::make_unique<BandConvAggregator>(Kernel::band({1.0, -stage.lambda})));
            return;
        case Kind::conv: out.push_back(std::make_unique<BandConvAggregator>(Kernel::band(stage.weights))); return;
        case Kind::corr: out.push_back(std::make_unique<CorrelationAggregator>(stage.weights)); return;
    }
}

void append_elementary(const FunctorStage& stage, std::vector<std::unique_ptr<Decoder>>& out) {
    using Kind = FunctorStage::Kind;
    switch (stage.kind) {
        case Kind::identity: return;
        case Kind::sum_power:
            for (int i = 0; i < stage.power; ++i) out.push_back(std::make_unique<PrefixSumDecoder>());
            return;
        case Kind::diff_power:
            for (int i = 0; i < stage.power; ++i) {
                out.push_back(std::make_unique<BandConvDecoder>(Kernel::band({1.0, -1.0})));
            }
            return;
        case Kind::sum_lambda: out.push_back(std::make_unique<GeometricConvDecoder>(1.0, stage.lambda)); return;
        case Kind::diff_lambda:
            out.push_back(std::make_unique<BandConvDecoder>(Kernel::band({1.0, -stage.lambda})));
            return;
        case Kind::conv: out.push_back(std::make_unique<BandConvDecoder>(Kernel::band(stage.weights))); return;
        case Kind::corr: out.push_back(std::make_unique<CorrelationDecoder>(stage.weights)); return;
    }
}

}  // namespace

std::string FunctorStage::to_string() const {
    switch (kind) {
        case Kind::identity: return "id";
        case Kind::sum_power: return "S^" + std::to_string(power);
        case Kind::diff_power: return "D^" + std::to_string(power);
        case Kind::sum_lambda: return "S_l:" + format_shortest(lambda);
        case Kind::diff_lambda: return "D_l:" + format_shortest(lambda);
        case Kind::conv: return "conv:" + join_weights(weights);
        case Kind::corr: return "corr:" + join_weights(weights);
    }
    return "id";
}

std::size_t FunctorStage::depth() const {
    switch (kind) {
        case Kind::identity: return 0;
        case Kind::sum_power:
        case Kind::diff_power: return static_cast<std::size_t>(power);
        default: return 1;
    }
}

FunctorSpec::FunctorSpec(std::vector<FunctorStage> stages) : stages_(std::move(stages)) {
    for (const FunctorStage& s : stages_) validate(s);
}

FunctorSpec FunctorSpec::parse(std::string_view text) {
    if (trim(text).empty()) throw ParseError("empty wrapper spec");
    std::vector<FunctorStage> stages;
    for (const std::string& token : split_chain(text)) {
        if (token.empty()) throw ParseError("empty stage in wrapper spec \"" + std::string(text) + "\"");
        stages.push_back(parse_stage(token));
    }
    return FunctorSpec(std::move(stages));
}

FunctorSpec FunctorSpec::sum_power(int n) {
    return FunctorSpec({FunctorStage{FunctorStage::Kind::sum_power, n, 0.0, {}}});
}

FunctorSpec FunctorSpec::diff_power(int n) {
    return FunctorSpec({FunctorStage{FunctorStage::Kind::diff_power, n, 0.0, {}}});
}

FunctorSpec FunctorSpec::sum_lambda(double lambda) {
    return FunctorSpec({FunctorStage{FunctorStage::Kind::sum_lambda, 0, lambda, {}}});
}

FunctorSpec FunctorSpec::diff_lambda(double lambda) {
    return FunctorSpec({FunctorStage{FunctorStage::Kind::diff_lambda, 0, lambda, {}}});
}

FunctorSpec FunctorSpec::conv(std::vector<double> weights) {
    return FunctorSpec({FunctorStage{FunctorStage::Kind::conv, 0, 0.0, std::move(weights)}});
}

FunctorSpec FunctorSpec::corr(std::vector<double> weights) {
    return FunctorSpec({FunctorStage{FunctorStage::Kind::corr, 0, 0.0, std::move(weights)}});
}

bool FunctorSpec::is_identity() const {
    for (const FunctorStage& s : stages_) {
        if (s.depth() != 0) return false;
    }
    return true;
}

std::string FunctorSpec::to_string() const {
    if (stages_.empty()) return "id";
    std::string out;
    for (std::size_t i = 0; i < stages_.size(); ++i) {
        if (i) out += '+';
        out += stages_[i].to_string();
    }
    return out;
}

FunctorSpec FunctorSpec::then(const FunctorSpec& next) const {
    std::vector<FunctorStage> stages = stages_;
    stages.insert(stages.end(), next.stages_.begin(), next.stages_.end());
    return FunctorSpec(std::move(stages));
}

std::optional<int> FunctorSpec::group_power() const {
    int total = 0;
    for (const FunctorStage& s : stages_) {
        if (s.kind == FunctorStage::Kind::identity) continue;
        if (s.kind != FunctorStage::Kind::sum_power) return std::nullopt;
        total += s.power;
    }
    return total;
}

std::optional<Kernel> FunctorSpec::stage_kernel(const FunctorStage& stage) {
    using Kind = FunctorStage::Kind;
    switch (stage.kind) {
        case Kind::identity: return Kernel::identity();
        case Kind::sum_power: {
            Kernel k = Kernel::identity();
            for (int i = 0; i < stage.power; ++i) k = compose_kernels(k, Kernel::geometric(1.0, 1.0));
            return k;
        }
        case Kind::diff_power: {
            Kernel k = Kernel::identity();
            for (int i = 0; i < stage.power; ++i) k = compose_kernels(k, Kernel::band({1.0, -1.0}));
            return k;
        }
        case Kind::sum_lambda: return Kernel::geometric(1.0, stage.lambda);
        case Kind::diff_lambda: return Kernel::band({1.0, -stage.lambda});
        case Kind::conv: return Kernel::band(stage.weights);
        case Kind::corr: return std::nullopt;
    }
    return std::nullopt;
}

std::optional<Kernel> FunctorSpec::composed_kernel(std::size_t truncation) const {
    Kernel k = Kernel::identity();
    for (const FunctorStage& s : stages_) {
        const std::optional<Kernel> stage = stage_kernel(s);
        if (!stage) return std::nullopt;
        k = compose_kernels(k, *stage, truncation);
    }
    return k;
}

std::unique_ptr<Aggregator> build_functor(const FunctorSpec& spec) {
    std::vector<std::unique_ptr<Aggregator>> parts;
    for (const FunctorStage& s : spec.stages()) append_elementary(s, parts);
    if (parts.empty()) return std::make_unique<IdentityAggregator>();
    if (parts.size() == 1) return std::move(parts.front());
    return std::make_unique<ChainAggregator>(std::move(parts));
}

std::unique_ptr<Decoder> build_decoder(const FunctorSpec& spec) {
    std::vector<std::unique_ptr<Decoder>> parts;
    for (const FunctorStage& s : spec.stages()) append_elementary(s, parts);
    if (parts.empty()) return std::make_unique<IdentityDecoder>();
    if (parts.size() == 1) return std::move(parts.front());
    return std::make_unique<ChainDecoder>(std::move(parts));
}

}  // namespace nmf
