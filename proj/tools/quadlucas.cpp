/*
 * quadlucas: command-line front end.
 *
 * Subcommands
 *   factor-seq          norms N(γⁿ−1), their factorizations, per-ideal valuations
 *   verify              full proof ledger per n; exit 0 iff every asserted row holds
 *   bound-table         largest primitive prime P vs the n-th lower bound
 *   primitive-divisors  just the primitive ideals of each γⁿ−1
 *   cache stats         factor cache statistics
 *
 * Exit codes: 0 ok, 2 parse/validation error, 3 factor budget exhausted,
 * 4 asserted invariant breached (or oracle disagreement).
 */

#include <quadlucas/emit.hpp>

#include <CLI11.hpp>

#include <atomic>
#include <exception>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <thread>
#include <vector>

using namespace quadlucas;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitParse = 2;
constexpr int kExitBudget = 3;
constexpr int kExitBreach = 4;

struct Range {
    unsigned long lo = 1;
    unsigned long hi = 1;
    bool empty() const { return hi < lo; }
};

unsigned long parse_index(const std::string& tok) {
    if (tok.empty() || tok.find_first_not_of("0123456789") != std::string::npos)
        throw std::invalid_argument("range: expected an unsigned integer, got '" + tok + "'");
    return std::stoul(tok);
}

/* "A..B" or a bare "A"; an inverted range (A > B) is legal and selects nothing */
Range parse_range(const std::string& s) {
    Range r;
    auto dots = s.find("..");
    if (dots == std::string::npos) {
        r.lo = r.hi = parse_index(s);
    } else {
        r.lo = parse_index(s.substr(0, dots));
        r.hi = parse_index(s.substr(dots + 2));
    }
    if (r.lo == 0 && !r.empty()) throw std::invalid_argument("range: n starts at 1");
    return r;
}

struct CommonOpts {
    std::string gamma;
    std::string range = "1..1";
    std::string format = "csv";
    std::string cache_path;
    std::string out_path;
    long budget_ms = 30000;
    unsigned jobs = 1;
};

void add_common(CLI::App* cmd, CommonOpts& o, bool with_jobs = true) {
    cmd->add_option("--gamma", o.gamma, "element literal, e.g. \"1+1*sqrt(2)\" or \"(1,-1,-1)+\"")
        ->required();
    cmd->add_option("--n", o.range, "index range A..B (or a single index)");
    cmd->add_option("--format", o.format, "output format: csv, json, md");
    cmd->add_option("--cache", o.cache_path, "factor cache file (default: QUADLUCAS_CACHE)");
    cmd->add_option("--budget-ms", o.budget_ms, "per-integer factoring budget in milliseconds");
    cmd->add_option("--out", o.out_path, "write output to a file instead of stdout");
    if (with_jobs) cmd->add_option("--jobs", o.jobs, "worker threads");
}

FieldElement parsed_gamma(const CommonOpts& o) {
    FieldElement g = parse_element(o.gamma);
    if (g.is_zero()) throw std::invalid_argument("gamma must be nonzero");
    if (is_root_of_unity(g))
        throw std::invalid_argument("gamma is a root of unity; the sequence degenerates");
    return g;
}

FactorCache open_cache(const CommonOpts& o) {
    return FactorCache(o.cache_path.empty() ? FactorCache::default_path() : o.cache_path);
}

template <class Fn>
int with_output(const std::string& path, Fn fn) {
    if (path.empty()) return fn(std::cout);
    std::ofstream f(path);
    if (!f) throw std::invalid_argument("cannot open output file: " + path);
    return fn(f);
}

std::vector<unsigned long> prime_divisors_of(unsigned long n) {
    std::vector<unsigned long> out;
    for (unsigned long q = 2; q * q <= n; ++q)
        if (n % q == 0) {
            out.push_back(q);
            while (n % q == 0) n /= q;
        }
    if (n > 1) out.push_back(n);
    return out;
}

/* shared by factor-seq and primitive-divisors */
std::vector<emit::SeqRow> build_seq_rows(const FieldElement& g, Range r, const FactorOptions& fopt,
                                         bool& budget_hit) {
    std::vector<emit::SeqRow> rows;
    const QuadraticField& K = g.field();
    for (unsigned long n = r.lo; !r.empty() && n <= r.hi; ++n) {
        FieldElement un = pow_minus_one(g, n);
        emit::SeqRow row;
        row.n = n;
        row.norm = un.norm();
        BigInt num = abs(row.norm.num());
        if (num.is_one()) {
            row.factorization = "1";
        } else {
            Factorization F = factor(num, fopt);
            row.factorization = F.str();
            row.complete = F.complete;
            if (!F.complete) budget_hit = true;
            std::vector<unsigned long> nq = prime_divisors_of(n);
            for (const auto& [p, mult] : F.primes) {
                (void)mult;
                for (const PrimeIdeal& P : split_prime(K, p)) {
                    long nu = valuation(un, P);
                    if (nu <= 0) continue;
                    emit::SeqIdeal id;
                    id.ideal = P.name();
                    id.p = p;
                    id.f = P.residue_degree();
                    id.e = P.ramification();
                    id.nu = nu;
                    id.primitive = true;
                    for (unsigned long q : nq)
                        if (valuation(pow_minus_one(g, n / q), P) > 0) {
                            id.primitive = false;
                            break;
                        }
                    row.ideals.push_back(std::move(id));
                }
            }
        }
        rows.push_back(std::move(row));
        if (n == r.hi) break; /* guard against unsigned wrap at ULONG_MAX */
    }
    return rows;
}

int run_factor_seq(const CommonOpts& o, bool primitive_only) {
    FieldElement g = parsed_gamma(o);
    Range r = parse_range(o.range);
    FactorCache cache = open_cache(o);
    FactorOptions fopt{o.budget_ms, &cache};
    bool budget_hit = false;
    std::vector<emit::SeqRow> rows = build_seq_rows(g, r, fopt, budget_hit);
    emit::Format fmt = emit::parse_format(o.format);
    with_output(o.out_path, [&](std::ostream& os) {
        if (primitive_only) {
            if (fmt == emit::Format::Csv) emit::write_prim_csv(os, rows);
            if (fmt == emit::Format::Json) emit::write_prim_json(os, rows);
            if (fmt == emit::Format::Md) emit::write_prim_md(os, rows);
        } else {
            if (fmt == emit::Format::Csv) emit::write_seq_csv(os, rows);
            if (fmt == emit::Format::Json) emit::write_seq_json(os, rows);
            if (fmt == emit::Format::Md) emit::write_seq_md(os, rows);
        }
        return 0;
    });
    return budget_hit ? kExitBudget : kExitOk;
}

std::vector<ProofLedger> build_all_ledgers(const FieldElement& g, Range r,
                                           const LedgerOptions& lopt, unsigned jobs) {
    std::vector<ProofLedger> out;
    if (r.empty()) return out;
    const unsigned long count = r.hi - r.lo + 1;
    std::vector<std::optional<ProofLedger>> slots(count);
    std::vector<std::exception_ptr> errs(count);
    jobs = std::max(1u, std::min<unsigned>(jobs, static_cast<unsigned>(count)));
    std::atomic<unsigned long> next{0};
    auto work = [&]() {
        for (;;) {
            unsigned long i = next.fetch_add(1);
            if (i >= count) return;
            try {
                slots[i] = build_ledger(g, r.lo + i, lopt);
            } catch (...) {
                errs[i] = std::current_exception();
            }
        }
    };
    if (jobs == 1) {
        work();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(jobs);
        for (unsigned j = 0; j < jobs; ++j) pool.emplace_back(work);
        for (std::thread& t : pool) t.join();
    }
    for (unsigned long i = 0; i < count; ++i) {
        if (errs[i]) std::rethrow_exception(errs[i]);
        out.push_back(std::move(*slots[i]));
    }
    return out;
}

int run_verify(const CommonOpts& o, bool oracle, const std::string& inject) {
    FieldElement g = parsed_gamma(o);
    Range r = parse_range(o.range);
    FactorCache cache = open_cache(o);
    LedgerOptions lopt;
    lopt.factor = FactorOptions{o.budget_ms, &cache};
    std::vector<ProofLedger> ledgers = build_all_ledgers(g, r, lopt, o.jobs);

    bool breach = false;
    bool budget = false;
    if (!inject.empty()) {
        bool found = false;
        for (ProofLedger& L : ledgers)
            for (LedgerRow& row : L.rows)
                if (row.id == inject) {
                    row.verdict = Verdict::Fails;
                    row.asserted = true;
                    row.margin = -1;
                    row.note = "injected failure (test fixture)";
                    found = true;
                }
        if (!found) throw std::invalid_argument("--inject-fail: no row with id '" + inject + "'");
    }

    for (const ProofLedger& L : ledgers) {
        if (!L.asserted_pass()) breach = true;
        if (!L.p_exact || !L.p_un_exact) budget = true;
        for (const LedgerRow& row : L.rows)
            if (row.asserted && row.verdict == Verdict::Fails)
                std::cerr << "asserted row fails: gamma=" << L.gamma << " n=" << L.n
                          << " id=" << row.id << '\n';
    }

    if (oracle) {
        const QuadraticField& K = g.field();
        for (const ProofLedger& L : ledgers)
            for (const PhiPrimeRow& pr : L.primes) {
                const PrimeIdeal* P = nullptr;
                std::vector<PrimeIdeal> above = split_prime(K, pr.p);
                for (const PrimeIdeal& cand : above)
                    if (cand.name() == pr.ideal) P = &cand;
                if (!P) {
                    std::cerr << "oracle: ideal " << pr.ideal << " not found above " << pr.p.str()
                              << '\n';
                    breach = true;
                    continue;
                }
                Primitivity expect = pr.primitive ? Primitivity::Primitive : Primitivity::NonPrimitive;
                PrimitivityVerdict by_order = classify_primitivity(g, L.n, *P, lopt.factor);
                PrimitivityVerdict by_scan = classify_primitivity_scan(g, L.n, *P);
                if (by_order.verdict != expect || by_scan.verdict != expect) {
                    std::cerr << "oracle disagreement: n=" << L.n << " ideal=" << pr.ideal
                              << " ledger=" << (pr.primitive ? "primitive" : "non-primitive")
                              << " order-based=" << to_string(by_order.verdict)
                              << " scan=" << to_string(by_scan.verdict) << '\n';
                    breach = true;
                }
            }
    }

    emit::Format fmt = emit::parse_format(o.format);
    with_output(o.out_path, [&](std::ostream& os) {
        if (fmt == emit::Format::Csv) emit::write_ledgers_csv(os, ledgers);
        if (fmt == emit::Format::Json) emit::write_ledgers_json(os, ledgers);
        if (fmt == emit::Format::Md) emit::write_ledgers_md(os, ledgers);
        return 0;
    });
    if (breach) return kExitBreach;
    if (budget) return kExitBudget;
    return kExitOk;
}

int run_bound_table(const CommonOpts& o) {
    FieldElement g = parsed_gamma(o);
    Range r = parse_range(o.range);
    FactorCache cache = open_cache(o);
    LedgerOptions lopt;
    lopt.factor = FactorOptions{o.budget_ms, &cache};
    std::vector<ScanRow> rows =
        r.empty() ? std::vector<ScanRow>{} : scan(g, r.lo, r.hi, {}, lopt, o.jobs);

    bool breach = false;
    bool budget = false;
    for (const ScanRow& row : rows) {
        if (!row.error.empty()) {
            std::cerr << "n=" << row.n << ": " << row.error << '\n';
            breach = true;
        } else if (!row.asserted_pass) {
            for (const std::string& id : row.failing)
                std::cerr << "asserted row fails: n=" << row.n << " id=" << id << '\n';
            breach = true;
        }
        if (!row.exact) budget = true;
    }

    emit::Format fmt = emit::parse_format(o.format);
    with_output(o.out_path, [&](std::ostream& os) {
        if (fmt == emit::Format::Csv) emit::write_bound_csv(os, rows);
        if (fmt == emit::Format::Json) emit::write_bound_json(os, rows);
        if (fmt == emit::Format::Md) emit::write_bound_md(os, rows);
        return 0;
    });
    if (breach) return kExitBreach;
    if (budget) return kExitBudget;
    return kExitOk;
}

int run_cache_stats(const std::string& path) {
    FactorCache cache(path.empty() ? FactorCache::default_path() : path);
    FactorCache::Stats s = cache.stats();
    std::cout << "path: " << s.path << '\n'
              << "entries: " << s.entries << '\n'
              << "hits: " << s.hits << '\n'
              << "misses: " << s.misses << '\n'
              << "appended: " << s.appended << '\n'
              << "rejected_lines: " << s.rejected_lines << '\n';
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"quadratic Lucas sequence toolkit: factorizations, proof ledgers, bound tables"};
    app.require_subcommand(1);

    CommonOpts fs_opts, vf_opts, bt_opts, pd_opts;
    bool vf_oracle = false;
    std::string vf_inject;
    std::string cache_stats_path;

    CLI::App* fs = app.add_subcommand("factor-seq", "factor N(gamma^n - 1) over a range of n");
    add_common(fs, fs_opts, false);

    CLI::App* vf = app.add_subcommand("verify", "build and check the proof ledger for each n");
    add_common(vf, vf_opts);
    vf->add_flag("--oracle", vf_oracle,
                 "cross-check primitivity via the order-based and scan classifiers");
    vf->add_option("--inject-fail", vf_inject, "force the named ledger row to fail")->group("");

    CLI::App* bt = app.add_subcommand("bound-table", "largest primitive prime vs the lower bound");
    add_common(bt, bt_opts);

    CLI::App* pd = app.add_subcommand("primitive-divisors", "primitive prime ideals of gamma^n - 1");
    add_common(pd, pd_opts, false);

    CLI::App* cache = app.add_subcommand("cache", "factor cache maintenance");
    cache->require_subcommand(1);
    CLI::App* stats = cache->add_subcommand("stats", "print factor cache statistics");
    stats->add_option("--cache", cache_stats_path, "factor cache file (default: QUADLUCAS_CACHE)");

    int rc = kExitOk;
    fs->callback([&] { rc = run_factor_seq(fs_opts, false); });
    vf->callback([&] { rc = run_verify(vf_opts, vf_oracle, vf_inject); });
    bt->callback([&] { rc = run_bound_table(bt_opts); });
    pd->callback([&] { rc = run_factor_seq(pd_opts, true); });
    stats->callback([&] { rc = run_cache_stats(cache_stats_path); });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? kExitOk : kExitParse;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitParse;
    } catch (const std::domain_error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitParse;
    } catch (const std::out_of_range& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitParse;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitBreach;
    }
    return rc;
}
