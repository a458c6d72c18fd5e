// Copyright 2026 The Vaultgate Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#include "vaultgate/cli/cli.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>

#include "vaultgate/audit/ledger.hpp"
#include "vaultgate/broker/config.hpp"
#include "vaultgate/contract/dsl.hpp"
#include "vaultgate/contract/validate.hpp"
#include "vaultgate/core/canonical_json.hpp"
#include "vaultgate/core/error.hpp"
#include "vaultgate/store/csv.hpp"

namespace vaultgate::cli {

namespace {

// Thrown for anything the operator typed wrong: bad flags, unreadable files.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string read_text(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("cannot read " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string env_or(const char* name, std::string fallback) {
  const char* v = std::getenv(name);
  return v != nullptr && *v != '\0' ? std::string(v) : std::move(fallback);
}

std::string cell(const Json& v) { return v.is_string() ? v.get<std::string>() : v.dump(); }

class Session {
 public:
  Session(const TransportFactory& connect, std::string endpoint, std::string token, bool json, std::ostream& out,
          std::ostream& err)
      : connect_(connect), endpoint_(std::move(endpoint)), token_(std::move(token)), json_(json), out_(out),
        err_(err) {}

  // Sends one op. On success prints the result (verbatim JSON, or through
  // `human`) and returns kSuccess; on failure prints the error and returns
  // kDenied or kBrokerError.
  int call(const std::string& op, Json args, const std::function<void(const Json&)>& human,
           bool with_token = false) {
    Json request = {{"id", "cli-1"}, {"op", op}, {"args", std::move(args)}};
    if (with_token && !token_.empty()) request["token"] = token_;
    Json response;
    try {
      auto transport = connect_(endpoint_);
      response = Json::parse(transport->round_trip(canonical_dump(request)), nullptr, false);
    } catch (const std::exception& e) {
      err_ << "error: " << e.what() << '\n';
      return kBrokerError;
    }
    if (response.is_discarded() || !response.is_object() || !response.contains("ok")) {
      err_ << "error: malformed response from broker\n";
      return kBrokerError;
    }
    if (response.at("ok") == true) {
      last_result_ = response.at("result");
      const Json& result = last_result_;
      if (json_) {
        out_ << canonical_dump(result) << '\n';
      } else {
        human(result);
      }
      return kSuccess;
    }
    const Json& error = response.at("error");
    const std::string code = error.value("code", "Internal");
    const std::string message = error.value("message", "");
    const bool denied = error.value("denied", false);
    if (json_) {
      out_ << canonical_dump(error) << '\n';
    } else if (denied) {
      out_ << code << ": " << message << '\n';
    } else {
      err_ << "error: " << code << ": " << message << '\n';
    }
    return denied ? kDenied : kBrokerError;
  }

  std::ostream& out() { return out_; }
  const Json& last_result() const noexcept { return last_result_; }

 private:
  const TransportFactory& connect_;
  std::string endpoint_;
  std::string token_;
  bool json_;
  std::ostream& out_;
  std::ostream& err_;
  Json last_result_;
};

Json filter_args(const std::vector<std::pair<const char*, std::string>>& strings,
                 const std::vector<std::pair<const char*, std::optional<long long>>>& times) {
  Json args = Json::object();
  for (const auto& [key, value] : strings) {
    if (!value.empty()) args[key] = value;
  }
  for (const auto& [key, value] : times) {
    if (value) args[key] = *value;
  }
  return args;
}

int lint(const std::string& file, const std::vector<std::string>& tables, const std::string& config_path, bool json,
         std::ostream& out) {
  const std::string text = read_text(file);
  contract::DataContract c;
  try {
    c = contract::parse_contract(text);
  } catch (const ParseError& e) {
    if (json) {
      out << canonical_dump({{"ok", false},
                             {"error", {{"code", "ParseError"}, {"message", e.what()}, {"line", e.line()},
                                        {"column", e.column()}}}})
          << '\n';
    } else {
      out << file << ":" << e.line() << ":" << e.column() << ": " << e.what() << '\n';
    }
    return kDenied;
  }

  SchemaCatalog catalog;
  auto add_table = [&](const std::string& name, const std::filesystem::path& csv) {
    try {
      catalog.add(name, store::load_table_csv(csv).schema);
    } catch (const Error& e) {
      throw UsageError("table " + name + ": " + e.what());
    }
  };
  if (!config_path.empty()) {
    try {
      for (const auto& t : broker::BrokerConfig::load(config_path).tables) add_table(t.name, t.csv);
    } catch (const Error& e) {
      throw UsageError(e.what());
    }
  }
  for (const auto& entry : tables) {
    const auto eq = entry.find('=');
    if (eq == std::string::npos || eq == 0) throw UsageError("--table expects NAME=CSV, got '" + entry + "'");
    add_table(entry.substr(0, eq), entry.substr(eq + 1));
  }

  auto report = contract::validate_contract(c, catalog);
  if (catalog.names().empty()) {
    // Offline without a schema: only the checks that need no catalog apply.
    std::erase_if(report.problems, [](const contract::Problem& p) {
      return p.code == contract::ProblemCode::UnknownSource || p.code == contract::ProblemCode::UnknownColumn ||
             p.code == contract::ProblemCode::TypeMismatch;
    });
  }
  if (json) {
    Json problems = Json::array();
    for (const auto& p : report.problems) {
      problems.push_back({{"code", std::string(to_string(p.code))}, {"message", p.message}});
    }
    out << canonical_dump({{"ok", report.ok()}, {"contract_id", c.contract_id}, {"problems", problems}}) << '\n';
  } else if (report.ok()) {
    out << "ok\n";
  } else {
    for (const auto& p : report.problems) out << to_string(p.code) << ": " << p.message << '\n';
  }
  return report.ok() ? kSuccess : kDenied;
}

int verify_offline(const std::string& path, bool json, std::ostream& out) {
  if (!std::filesystem::exists(path)) throw UsageError("no such ledger file " + path);
  const auto r = audit::verify_file(path, audit::read_head(path));
  Json j = {{"ok", r.ok()}};
  if (!r.ok()) {
    j["first_bad_seq"] = *r.first_bad_seq;
    j["reason"] = r.reason;
  }
  if (json) {
    out << canonical_dump(j) << '\n';
  } else if (r.ok()) {
    out << "Ok\n";
  } else {
    out << "FirstBadSeq " << *r.first_bad_seq << ": " << r.reason << '\n';
  }
  return r.ok() ? kSuccess : kDenied;
}

void print_alert(std::ostream& out, const Json& a) {
  out << a.at("alert_id").get<std::string>() << ' ' << a.at("severity").get<std::string>() << ' '
      << a.at("rule").get<std::string>() << " session=" << a.at("session_id").get<std::string>()
      << " contract=" << a.at("contract_id").get<std::string>() << " at=" << a.at("at") << '\n';
}

}  // namespace

int run(const std::vector<std::string>& args, const TransportFactory& connect, std::ostream& out, std::ostream& err) {
  CLI::App app{"Operator front end for the vaultgate broker", "vaultgate"};
  app.fallthrough();
  app.require_subcommand(1);

  std::string endpoint = env_or("VAULTGATE_ENDPOINT", "vaultgate.sock");
  std::string token = env_or("VAULTGATE_TOKEN", "");
  bool json = false;
  app.add_option("--endpoint", endpoint, "Broker socket path");
  app.add_option("--token", token, "Contract token for session open");
  app.add_flag("--json", json, "Print the broker result as JSON");

  std::function<int(Session&)> action;
  std::function<int()> offline;

  // Positional and option storage shared by the subcommands below.
  std::string a1, a2, actor, reason, rule, kind, contract_id, session_id, file, config_path, justification;
  std::optional<long long> since, until;
  long long seconds = 0;
  std::vector<std::string> tables;

  auto* contract_cmd = app.add_subcommand("contract", "Submit, activate, revoke or lint contracts");
  contract_cmd->require_subcommand(1);
  {
    auto* c = contract_cmd->add_subcommand("submit", "Submit a contract file");
    c->add_option("file", a1)->required();
    c->add_option("--actor", actor);
    c->callback([&] {
      action = [&](Session& s) {
        return s.call("submit_contract", filter_args({{"text", read_text(a1)}, {"actor", actor}}, {}),
                      [&](const Json& r) {
                        s.out() << "submitted " << r.at("contract_id").get<std::string>() << " ("
                                << r.at("status").get<std::string>() << ")\n";
                      });
      };
    });
    c = contract_cmd->add_subcommand("activate", "Activate a draft contract");
    c->add_option("contract-id", a1)->required();
    c->add_option("--actor", actor);
    c->callback([&] {
      action = [&](Session& s) {
        return s.call("activate_contract", filter_args({{"contract_id", a1}, {"actor", actor}}, {}),
                      [&](const Json& r) {
                        s.out() << "activated " << r.at("contract_id").get<std::string>() << " until "
                                << r.at("expires_at") << "\ntoken " << r.at("token").get<std::string>() << '\n';
                      });
      };
    });
    c = contract_cmd->add_subcommand("revoke", "Revoke an active contract");
    c->add_option("contract-id", a1)->required();
    c->add_option("--reason", reason);
    c->add_option("--actor", actor);
    c->callback([&] {
      action = [&](Session& s) {
        return s.call("revoke_contract",
                      filter_args({{"contract_id", a1}, {"reason", reason}, {"actor", actor}}, {}),
                      [&](const Json& r) { s.out() << "revoked " << r.at("contract_id").get<std::string>() << '\n'; });
      };
    });
    c = contract_cmd->add_subcommand("lint", "Parse and validate a contract file offline");
    c->add_option("file", a1)->required();
    c->add_option("--table", tables, "NAME=CSV schema source (repeatable)");
    c->add_option("--config", config_path, "Take table schemas from a broker config");
    c->callback([&] { offline = [&] { return lint(a1, tables, config_path, json, out); }; });
  }

  auto* enclave_cmd = app.add_subcommand("enclave", "Enclave lifecycle");
  enclave_cmd->require_subcommand(1);
  {
    auto* c = enclave_cmd->add_subcommand("broker", "Create, provision, seal and open an enclave");
    c->add_option("contract-id", a1)->required();
    c->callback([&] {
      action = [&](Session& s) {
        return s.call("broker_enclave", {{"contract_id", a1}}, [&](const Json& r) {
          s.out() << "enclave " << r.at("enclave_id").get<std::string>() << ' ' << r.at("state").get<std::string>()
                  << '\n';
          for (const auto& seg : r.at("segments")) {
            s.out() << "  segment " << seg.at("source").get<std::string>() << " rows=" << seg.at("rows") << '\n';
          }
        });
      };
    });
    c = enclave_cmd->add_subcommand("create", "Create an enclave without provisioning it");
    c->add_option("contract-id", a1)->required();
    c->callback([&] {
      action = [&](Session& s) {
        return s.call("create_enclave", {{"contract_id", a1}}, [&](const Json& r) {
          s.out() << "enclave " << r.at("enclave_id").get<std::string>() << ' ' << r.at("state").get<std::string>()
                  << '\n';
        });
      };
    });
    c = enclave_cmd->add_subcommand("destroy", "Destroy an expired or revoked enclave");
    c->add_option("enclave-id", a1)->required();
    c->callback([&] {
      action = [&](Session& s) {
        return s.call("destroy_enclave", {{"enclave_id", a1}}, [&](const Json& r) {
          s.out() << "enclave " << r.at("enclave_id").get<std::string>() << " Destroyed\n";
        });
      };
    });
  }

  auto* session_cmd = app.add_subcommand("session", "Gateway sessions");
  session_cmd->require_subcommand(1);
  {
    auto* c = session_cmd->add_subcommand("open", "Open a session on a Serving enclave (needs --token)");
    c->add_option("enclave-id", a1)->required();
    c->callback([&] {
      action = [&](Session& s) {
        return s.call(
            "open_session", {{"enclave_id", a1}},
            [&](const Json& r) { s.out() << "session " << r.at("session_id").get<std::string>() << '\n'; }, true);
      };
    });
    c = session_cmd->add_subcommand("close", "Close a session");
    c->add_option("session-id", a1)->required();
    c->callback([&] {
      action = [&](Session& s) {
        return s.call("close_session", {{"session_id", a1}},
                      [&](const Json& r) { s.out() << "closed " << r.at("session_id").get<std::string>() << '\n'; });
      };
    });
  }

  auto* query_cmd = app.add_subcommand("query", "Run one statement in a session");
  query_cmd->add_option("session-id", a1)->required();
  query_cmd->add_option("statement", a2)->required();
  query_cmd->callback([&] {
    action = [&](Session& s) {
      return s.call("query", {{"session_id", a1}, {"statement", a2}}, [&](const Json& r) {
        const auto& cols = r.at("columns");
        for (std::size_t i = 0; i < cols.size(); ++i) s.out() << (i ? "\t" : "") << cols[i].get<std::string>();
        s.out() << '\n';
        for (const auto& row : r.at("rows")) {
          for (std::size_t i = 0; i < row.size(); ++i) s.out() << (i ? "\t" : "") << cell(row[i]);
          s.out() << '\n';
        }
        if (r.at("truncated") == true) s.out() << "(truncated)\n";
      });
    };
  });

  auto* alerts_cmd = app.add_subcommand("alerts", "List monitor alerts");
  alerts_cmd->add_option("--rule", rule);
  alerts_cmd->add_option("--contract", contract_id);
  alerts_cmd->add_option("--session", session_id);
  alerts_cmd->add_option("--since", since);
  alerts_cmd->add_option("--until", until);
  alerts_cmd->callback([&] {
    action = [&](Session& s) {
      return s.call("alerts",
                    filter_args({{"rule", rule}, {"contract_id", contract_id}, {"session_id", session_id}},
                                {{"since", since}, {"until", until}}),
                    [&](const Json& r) {
                      for (const auto& a : r.at("alerts")) print_alert(s.out(), a);
                    });
    };
  });

  auto* audit_cmd = app.add_subcommand("audit", "Export or verify the audit ledger");
  audit_cmd->require_subcommand(1);
  {
    auto* c = audit_cmd->add_subcommand("export", "Print ledger events as JSON Lines");
    c->add_option("--kind", kind);
    c->add_option("--actor", actor);
    c->add_option("--contract", contract_id);
    c->add_option("--since", since);
    c->add_option("--until", until);
    c->callback([&] {
      action = [&](Session& s) {
        return s.call("audit_export",
                      filter_args({{"kind", kind}, {"actor", actor}, {"contract_id", contract_id}},
                                  {{"since", since}, {"until", until}}),
                      [&](const Json& r) {
                        for (const auto& e : r.at("events")) s.out() << canonical_dump(e) << '\n';
                      });
      };
    });
    c = audit_cmd->add_subcommand("verify", "Recompute the hash chain");
    c->add_option("--file", file, "Verify a ledger file directly instead of asking the broker");
    c->callback([&] {
      if (!file.empty()) {
        offline = [&] { return verify_offline(file, json, out); };
        return;
      }
      action = [&](Session& s) {
        const int rc = s.call("audit_verify", Json::object(), [&](const Json& r) {
          if (r.at("ok") == true) {
            s.out() << "Ok (" << r.at("events") << " events)\n";
          } else {
            s.out() << "FirstBadSeq " << r.at("first_bad_seq") << ": " << r.at("reason").get<std::string>() << '\n';
          }
        });
        if (rc == kSuccess && s.last_result().at("ok") != true) return static_cast<int>(kDenied);
        return rc;
      };
    });
  }

  auto* bg_cmd = app.add_subcommand("bg", "Break-glass requests");
  bg_cmd->require_subcommand(1);
  {
    auto* c = bg_cmd->add_subcommand("request", "Request emergency access for a break-glass account");
    c->add_option("account", a1)->required();
    c->add_option("template", a2, "Contract file naming the account as principal")->required();
    c->add_option("--justification", justification);
    c->callback([&] {
      action = [&](Session& s) {
        return s.call("bg_request",
                      filter_args({{"account", a1}, {"template", read_text(a2)}, {"justification", justification}},
                                  {}),
                      [&](const Json& r) {
                        s.out() << "request " << r.at("request_id").get<std::string>() << ' '
                                << r.at("status").get<std::string>() << '\n';
                      });
      };
    });
    c = bg_cmd->add_subcommand("approve", "Approve a pending request");
    c->add_option("request-id", a1)->required();
    c->add_option("approver", a2)->required();
    c->callback([&] {
      action = [&](Session& s) {
        return s.call("bg_approve", {{"request_id", a1}, {"approver", a2}}, [&](const Json& r) {
          s.out() << "request " << r.at("request_id").get<std::string>() << ' ' << r.at("status").get<std::string>();
          if (r.contains("enclave_id")) {
            s.out() << " contract=" << r.at("contract_id").get<std::string>()
                    << " enclave=" << r.at("enclave_id").get<std::string>() << "\ntoken "
                    << r.at("token").get<std::string>();
          } else {
            s.out() << " approvals=" << r.at("approvals").size();
          }
          s.out() << '\n';
        });
      };
    });
    c = bg_cmd->add_subcommand("deny", "Deny a pending request");
    c->add_option("request-id", a1)->required();
    c->add_option("--actor", actor);
    c->callback([&] {
      action = [&](Session& s) {
        return s.call("bg_deny", filter_args({{"request_id", a1}, {"actor", actor}}, {}), [&](const Json& r) {
          s.out() << "request " << r.at("request_id").get<std::string>() << ' ' << r.at("status").get<std::string>()
                  << '\n';
        });
      };
    });
  }

  auto* clock_cmd = app.add_subcommand("clock", "Logical clock control");
  clock_cmd->require_subcommand(1);
  {
    auto* c = clock_cmd->add_subcommand("tick", "Advance the logical clock");
    c->add_option("seconds", seconds)->required()->check(CLI::NonNegativeNumber);
    c->callback([&] {
      action = [&](Session& s) {
        return s.call("tick", {{"seconds", seconds}}, [&](const Json& r) { s.out() << "now " << r.at("now") << '\n'; });
      };
    });
  }

  app.add_subcommand("sweep", "Expire contracts and enclaves past their TTL")->callback([&] {
    action = [&](Session& s) {
      return s.call("sweep", Json::object(), [&](const Json& r) {
        if (r.at("expired").empty()) s.out() << "nothing expired\n";
        for (const auto& e : r.at("expired")) {
          s.out() << "expired " << e.at("contract_id").get<std::string>();
          for (const auto& id : e.at("enclaves")) s.out() << ' ' << id.get<std::string>();
          if (!e.at("auto_revoked").is_null()) {
            s.out() << " auto-revoked " << e.at("auto_revoked").get<std::string>();
          }
          s.out() << '\n';
        }
      });
    };
  });

  app.add_subcommand("grants", "List live grants")->callback([&] {
    action = [&](Session& s) {
      return s.call("live_grants", Json::object(), [&](const Json& r) {
        for (const auto& g : r.at("grants")) {
          s.out() << g.at("contract_id").get<std::string>() << ' ' << g.at("principal").get<std::string>() << ' '
                  << g.at("source").get<std::string>() << " until " << g.at("expires_at") << '\n';
        }
      });
    };
  });

  app.add_subcommand("status", "Broker clock and counters")->callback([&] {
    action = [&](Session& s) {
      return s.call("status", Json::object(), [&](const Json& r) {
        s.out() << "now " << r.at("now") << " (" << r.at("clock").get<std::string>() << ")\n"
                << "contracts " << r.at("contracts") << "\nenclaves serving " << r.at("enclaves_serving")
                << "\naudit events " << r.at("audit_events") << '\n';
      });
    };
  });

  std::vector<const char*> argv{"vaultgate"};
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kSuccess;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kSuccess;
  } catch (const CLI::ParseError& e) {
    err << "usage: " << e.what() << '\n';
    return kUsage;
  } catch (const UsageError& e) {
    err << "usage: " << e.what() << '\n';
    return kUsage;
  }

  try {
    if (offline) return offline();
    if (!action) {
      err << "usage: no command given\n";
      return kUsage;
    }
    Session session(connect, endpoint, token, json, out, err);
    return action(session);
  } catch (const UsageError& e) {
    err << "usage: " << e.what() << '\n';
    return kUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kBrokerError;
  }
}

}  // namespace vaultgate::cli
