// httplib adapter for route().

#include "httplib.h"

#include "chordgen/service.h"

namespace chordgen {

struct HttpServer::Impl {
  const ChordService& service;
  httplib::Server server;
};

namespace {

void handle(const ChordService& service, const httplib::Request& req, httplib::Response& res) {
  QueryParams query(req.params.begin(), req.params.end());
  auto response = route(service, req.method, req.path, query, req.body);
  res.status = response.status;
  res.set_content(response.body, response.content_type);
}

}  // namespace

HttpServer::HttpServer(const ChordService& service) : impl_(new Impl{service, {}}) {
  auto handler = [this](const httplib::Request& req, httplib::Response& res) {
    handle(impl_->service, req, res);
  };
  impl_->server.Get(".*", handler);
  impl_->server.Post(".*", handler);
  impl_->server.Put(".*", handler);
  impl_->server.Delete(".*", handler);
}

HttpServer::~HttpServer() { stop(); }

int HttpServer::bind(const std::string& host, int port) {
  if (port == 0) return impl_->server.bind_to_any_port(host);
  return impl_->server.bind_to_port(host, port) ? port : -1;
}

bool HttpServer::listen() { return impl_->server.listen_after_bind(); }

void HttpServer::stop() {
  if (impl_) impl_->server.stop();
}

bool HttpServer::running() const { return impl_->server.is_running(); }

}  // namespace chordgen
