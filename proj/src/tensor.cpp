#include "hllab/tensor.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "hllab/rng.hpp"

namespace hllab {

namespace {

std::size_t checked_size(const std::vector<int>& dims) {
    std::size_t n = 1;
    for (int d : dims) {
        if (d < 1) throw std::invalid_argument("CoeffTensor: every mode size must be >= 1");
        n *= static_cast<std::size_t>(d);
    }
    return n;
}

void validate_coeffs(Field field, const std::vector<Scalar>& coeffs) {
    for (const Scalar& c : coeffs) {
        if (!std::isfinite(c.real()) || !std::isfinite(c.imag()))
            throw std::invalid_argument("CoeffTensor: coefficients must be finite");
        if (field == Field::Real && c.imag() != 0.0)
            throw std::invalid_argument("CoeffTensor: real field with nonzero imaginary part");
    }
}

}  // namespace

CoeffTensor::CoeffTensor(std::vector<int> dims, Field field)
    : dims_(std::move(dims)), field_(field), coeffs_(checked_size(dims_)) {}

CoeffTensor::CoeffTensor(std::vector<int> dims, Field field, std::vector<Scalar> coeffs)
    : dims_(std::move(dims)), field_(field), coeffs_(std::move(coeffs)) {
    if (coeffs_.size() != checked_size(dims_))
        throw std::invalid_argument("CoeffTensor: coefficient count does not match dims");
    validate_coeffs(field_, coeffs_);
}

CoeffTensor CoeffTensor::from_real(std::vector<int> dims, const std::vector<double>& coeffs) {
    std::vector<Scalar> c(coeffs.begin(), coeffs.end());
    return CoeffTensor(std::move(dims), Field::Real, std::move(c));
}

std::size_t CoeffTensor::flat_index(std::span<const int> multi) const {
    if (multi.size() != dims_.size())
        throw std::invalid_argument("flat_index: wrong number of indices");
    std::size_t idx = 0;
    for (std::size_t k = 0; k < dims_.size(); ++k) {
        if (multi[k] < 0 || multi[k] >= dims_[k]) throw std::out_of_range("flat_index");
        idx = idx * static_cast<std::size_t>(dims_[k]) + static_cast<std::size_t>(multi[k]);
    }
    return idx;
}

bool CoeffTensor::is_zero() const {
    return std::all_of(coeffs_.begin(), coeffs_.end(),
                       [](const Scalar& c) { return c == Scalar{}; });
}

MixedExponents::MixedExponents(std::vector<double> e) : exps(std::move(e)) {
    for (double s : exps)
        if (!(s >= 1.0)) throw std::invalid_argument("MixedExponents: every exponent must be >= 1");
}

Scalar evaluate(const CoeffTensor& t, std::span<const Vector> xs) {
    if (static_cast<int>(xs.size()) != t.order())
        throw std::invalid_argument("evaluate: argument count does not match tensor order");
    for (int k = 0; k < t.order(); ++k)
        if (static_cast<int>(xs[static_cast<std::size_t>(k)].size()) != t.dim(k))
            throw std::invalid_argument("evaluate: vector length does not match mode size");

    // fold the last mode repeatedly; O(size) total
    std::vector<Scalar> buf(t.coeffs().begin(), t.coeffs().end());
    std::size_t len = buf.size();
    for (int k = t.order() - 1; k >= 0; --k) {
        const Vector& x = xs[static_cast<std::size_t>(k)];
        std::size_t nk = static_cast<std::size_t>(t.dim(k));
        len /= nk;
        for (std::size_t i = 0; i < len; ++i) {
            Scalar s{};
            for (std::size_t j = 0; j < nk; ++j) s += buf[i * nk + j] * x[j];
            buf[i] = s;
        }
    }
    return buf.empty() ? Scalar{} : buf[0];
}

CoeffTensor contract_mode(const CoeffTensor& t, int mode, const Vector& x) {
    if (mode < 0 || mode >= t.order()) throw std::out_of_range("contract_mode: bad mode");
    if (static_cast<int>(x.size()) != t.dim(mode))
        throw std::invalid_argument("contract_mode: vector length does not match mode size");

    std::size_t outer = 1, inner = 1;
    for (int k = 0; k < mode; ++k) outer *= static_cast<std::size_t>(t.dim(k));
    for (int k = mode + 1; k < t.order(); ++k) inner *= static_cast<std::size_t>(t.dim(k));
    std::size_t nk = static_cast<std::size_t>(t.dim(mode));

    std::vector<Scalar> out(outer * inner);
    std::span<const Scalar> a = t.coeffs();
    for (std::size_t o = 0; o < outer; ++o)
        for (std::size_t j = 0; j < nk; ++j) {
            Scalar xj = x[j];
            if (xj == Scalar{}) continue;
            const Scalar* src = a.data() + (o * nk + j) * inner;
            Scalar* dst = out.data() + o * inner;
            for (std::size_t i = 0; i < inner; ++i) dst[i] += src[i] * xj;
        }

    std::vector<int> dims;
    dims.reserve(static_cast<std::size_t>(t.order()) - 1);
    for (int k = 0; k < t.order(); ++k)
        if (k != mode) dims.push_back(t.dim(k));

    bool real = t.field() == Field::Real &&
                std::all_of(x.begin(), x.end(), [](const Scalar& v) { return v.imag() == 0.0; });
    return CoeffTensor(std::move(dims), real ? Field::Real : Field::Complex, std::move(out));
}

CoeffTensor contract_last(const CoeffTensor& t, const Vector& x) {
    if (t.order() < 1) throw std::invalid_argument("contract_last: order-0 tensor");
    return contract_mode(t, t.order() - 1, x);
}

double scaled_lq_norm(std::span<const double> mags, double q) {
    if (!(q >= 1.0)) throw std::invalid_argument("scaled_lq_norm: q >= 1 required");
    double peak = 0.0;
    for (double v : mags) peak = std::max(peak, v);
    if (peak == 0.0) return 0.0;
    // rescale by 2^-e so the core sum is scale-free; exact under 2^k inputs
    int e = std::ilogb(peak);
    double s = std::ldexp(1.0, -e);
    double sum = 0.0;
    for (double v : mags)
        if (v != 0.0) sum += std::pow(v * s, q);
    return std::ldexp(std::pow(sum, 1.0 / q), e);
}

double lp_coeff_norm(const CoeffTensor& t, double rho) {
    if (!(rho >= 1.0)) throw std::invalid_argument("lp_coeff_norm: rho >= 1 required");
    std::vector<double> mags(t.size());
    std::span<const Scalar> a = t.coeffs();
    for (std::size_t i = 0; i < mags.size(); ++i) mags[i] = std::abs(a[i]);
    return scaled_lq_norm(mags, rho);
}

double mixed_norm(const CoeffTensor& t, const MixedExponents& e) {
    if (static_cast<int>(e.exps.size()) != t.order())
        throw std::invalid_argument("mixed_norm: exponent count does not match tensor order");
    std::vector<double> buf(t.size());
    std::span<const Scalar> a = t.coeffs();
    for (std::size_t i = 0; i < buf.size(); ++i) buf[i] = std::abs(a[i]);

    std::size_t len = buf.size();
    for (int k = t.order() - 1; k >= 0; --k) {
        std::size_t nk = static_cast<std::size_t>(t.dim(k));
        len /= nk;
        for (std::size_t i = 0; i < len; ++i)
            buf[i] = scaled_lq_norm({buf.data() + i * nk, nk}, e.exps[static_cast<std::size_t>(k)]);
    }
    return buf.empty() ? 0.0 : buf[0];
}

CoeffTensor random_tensor(std::vector<int> dims, Field field, Dist dist, std::uint64_t seed) {
    if (dims.empty()) throw std::invalid_argument("random_tensor: dims must be nonempty");
    std::size_t n = checked_size(dims);
    Rng rng(seed);
    std::vector<Scalar> coeffs(n);
    for (std::size_t i = 0; i < n; ++i) {
        if (dist == Dist::Signs)
            coeffs[i] = field == Field::Real ? Scalar{rng.sign(), 0.0} : rng.fourth_root();
        else
            coeffs[i] = field == Field::Real ? Scalar{rng.normal(), 0.0} : rng.complex_normal();
    }
    return CoeffTensor(std::move(dims), field, std::move(coeffs));
}

CoeffTensor tensor_product(const CoeffTensor& a, const CoeffTensor& b) {
    if (a.field() != b.field())
        throw std::invalid_argument("tensor_product: field mismatch");
    std::vector<int> dims = a.dims();
    dims.insert(dims.end(), b.dims().begin(), b.dims().end());
    std::vector<Scalar> coeffs(a.size() * b.size());
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j) coeffs[i * b.size() + j] = a.coeff(i) * b.coeff(j);
    return CoeffTensor(std::move(dims), a.field(), std::move(coeffs));
}

// --- JSON ----------------------------------------------------------------

std::string tensor_to_json(const CoeffTensor& t, int indent) {
    nlohmann::json j;
    j["m"] = t.order();
    j["dims"] = t.dims();
    j["field"] = t.field() == Field::Real ? "real" : "complex";
    nlohmann::json coeffs = nlohmann::json::array();
    for (const Scalar& c : t.coeffs()) {
        if (t.field() == Field::Real)
            coeffs.push_back(c.real());
        else
            coeffs.push_back({c.real(), c.imag()});
    }
    j["coeffs"] = std::move(coeffs);
    return j.dump(indent);
}

CoeffTensor tensor_from_json(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw SchemaError(std::string("tensor: invalid JSON: ") + e.what());
    }
    if (!j.is_object()) throw SchemaError("tensor: top level must be an object");
    for (const char* key : {"m", "dims", "field", "coeffs"})
        if (!j.contains(key)) throw SchemaError(std::string("tensor: missing field \"") + key + "\"");

    if (!j["m"].is_number_integer()) throw SchemaError("tensor: \"m\" must be an integer");
    int m = j["m"].get<int>();
    if (!j["dims"].is_array()) throw SchemaError("tensor: \"dims\" must be an array");
    std::vector<int> dims;
    for (const auto& d : j["dims"]) {
        if (!d.is_number_integer() || d.get<int>() < 1)
            throw SchemaError("tensor: \"dims\" entries must be integers >= 1");
        dims.push_back(d.get<int>());
    }
    if (static_cast<int>(dims.size()) != m)
        throw SchemaError("tensor: \"m\" does not match the length of \"dims\"");

    if (!j["field"].is_string()) throw SchemaError("tensor: \"field\" must be a string");
    std::string fs = j["field"].get<std::string>();
    Field field;
    if (fs == "real")
        field = Field::Real;
    else if (fs == "complex")
        field = Field::Complex;
    else
        throw SchemaError("tensor: \"field\" must be \"real\" or \"complex\"");

    if (!j["coeffs"].is_array()) throw SchemaError("tensor: \"coeffs\" must be an array");
    std::size_t expect = 1;
    for (int d : dims) expect *= static_cast<std::size_t>(d);
    if (j["coeffs"].size() != expect) {
        std::ostringstream os;
        os << "tensor: \"coeffs\" has " << j["coeffs"].size() << " entries, expected " << expect;
        throw SchemaError(os.str());
    }

    std::vector<Scalar> coeffs;
    coeffs.reserve(expect);
    for (const auto& c : j["coeffs"]) {
        if (field == Field::Real) {
            if (!c.is_number())
                throw SchemaError("tensor: \"coeffs\" entry is not a number but field is \"real\"");
            coeffs.emplace_back(c.get<double>(), 0.0);
        } else {
            if (!c.is_array() || c.size() != 2 || !c[0].is_number() || !c[1].is_number())
                throw SchemaError("tensor: complex \"coeffs\" entries must be [re, im] pairs");
            coeffs.emplace_back(c[0].get<double>(), c[1].get<double>());
        }
    }
    return CoeffTensor(std::move(dims), field, std::move(coeffs));
}

void save_tensor(const CoeffTensor& t, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("save_tensor: cannot open " + path);
    out << tensor_to_json(t) << '\n';
}

CoeffTensor load_tensor(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw SchemaError("load_tensor: cannot open " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return tensor_from_json(buf.str());
}

}  // namespace hllab
