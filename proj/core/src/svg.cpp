#include "noisegate/experiment.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <cmath>
#include <limits>

namespace noisegate
{

namespace
{

constexpr const char* scheme_colour( SchemeKind s )
{
  switch ( s )
  {
  case SchemeKind::Conventional:
    return "#c0392b";
  case SchemeKind::CentMrf:
    return "#2471a3";
  case SchemeKind::DcvsMrf:
    return "#1e8449";
  }
  return "#000000";
}

std::string header( int w, int h )
{
  return fmt::format( "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{0}\" height=\"{1}\" viewBox=\"0 0 {0} {1}\" "
                      "font-family=\"sans-serif\" font-size=\"12\">\n<rect width=\"{0}\" height=\"{1}\" fill=\"white\"/>\n",
                      w, h );
}

std::string text( double x, double y, const std::string& s, const char* anchor = "middle", const char* extra = "" )
{
  return fmt::format( "<text x=\"{:.1f}\" y=\"{:.1f}\" text-anchor=\"{}\"{}>{}</text>\n", x, y, anchor, extra, s );
}

} // namespace

std::string kld_plot_svg( const SweepResult& r, const std::string& gate )
{
  constexpr int W = 640, H = 420, L = 80, R = 150, T = 40, B = 60;
  const double pw = W - L - R, ph = H - T - B;

  double xmin = std::numeric_limits<double>::infinity(), xmax = -xmin;
  double ymin = xmin, ymax = -xmin;
  for ( const auto& c : r.curves )
  {
    if ( c.gate != gate || !std::isfinite( c.snr_db ) || c.samples == 0 )
      continue;
    xmin = std::min( xmin, c.snr_db );
    xmax = std::max( xmax, c.snr_db );
    if ( c.mean_kld > 0.0 )
    {
      ymin = std::min( ymin, c.mean_kld );
      ymax = std::max( ymax, c.mean_kld );
    }
  }
  if ( !std::isfinite( xmin ) )
  {
    xmin = 0.0;
    xmax = 1.0;
  }
  if ( xmax == xmin )
    xmax = xmin + 1.0;
  if ( !std::isfinite( ymin ) )
  {
    ymin = 1e-9;
    ymax = 1e-3;
  }
  // zero KLD has no log; it is drawn on the bottom decade
  const double d0 = std::floor( std::log10( ymin ) ) - 1.0;
  const double d1 = std::max( d0 + 1.0, std::ceil( std::log10( ymax ) ) );
  auto px = [&]( double x ) { return L + ( x - xmin ) / ( xmax - xmin ) * pw; };
  auto py = [&]( double y ) {
    double ly = y > 0.0 ? std::max( std::log10( y ), d0 ) : d0;
    return T + ( d1 - ly ) / ( d1 - d0 ) * ph;
  };

  std::string s = header( W, H );
  s += text( L + pw / 2, 24, fmt::format( "KLD vs input SNR: {}", gate ), "middle", " font-size=\"15\"" );
  s += fmt::format( "<rect x=\"{}\" y=\"{}\" width=\"{}\" height=\"{}\" fill=\"none\" stroke=\"black\"/>\n", L, T, pw, ph );
  for ( double d = d0; d <= d1 + 1e-9; d += 1.0 )
  {
    double y = T + ( d1 - d ) / ( d1 - d0 ) * ph;
    s += fmt::format( "<line x1=\"{}\" y1=\"{:.1f}\" x2=\"{}\" y2=\"{:.1f}\" stroke=\"#ddd\"/>\n", L, y, L + pw, y );
    s += text( L - 6, y + 4, d == d0 ? fmt::format( "1e{:.0f} / 0", d ) : fmt::format( "1e{:.0f}", d ), "end" );
  }
  std::vector<double> ticks;
  for ( const auto& c : r.curves )
    if ( c.gate == gate && std::isfinite( c.snr_db ) && std::find( ticks.begin(), ticks.end(), c.snr_db ) == ticks.end() )
      ticks.push_back( c.snr_db );
  for ( double x : ticks )
  {
    s += fmt::format( "<line x1=\"{0:.1f}\" y1=\"{1}\" x2=\"{0:.1f}\" y2=\"{2}\" stroke=\"#ddd\"/>\n", px( x ), T, T + ph );
    s += text( px( x ), T + ph + 16, snr_label( x ) );
  }
  s += text( L + pw / 2, H - 18, "input SNR (dB)" );
  s += fmt::format( "<text x=\"20\" y=\"{0:.1f}\" text-anchor=\"middle\" transform=\"rotate(-90 20 {0:.1f})\">mean KLD "
                    "(bits)</text>\n",
                    T + ph / 2 );

  int legend = 0;
  for ( auto scheme : all_schemes )
  {
    std::string pts, marks;
    for ( const auto& c : r.curves )
    {
      if ( c.gate != gate || c.scheme != scheme || !std::isfinite( c.snr_db ) || c.samples == 0 )
        continue;
      pts += fmt::format( "{:.1f},{:.1f} ", px( c.snr_db ), py( c.mean_kld ) );
      marks += fmt::format( "<circle cx=\"{:.1f}\" cy=\"{:.1f}\" r=\"3\" fill=\"{}\"/>\n", px( c.snr_db ), py( c.mean_kld ),
                            scheme_colour( scheme ) );
    }
    if ( pts.empty() )
      continue;
    s += fmt::format( "<polyline fill=\"none\" stroke=\"{}\" stroke-width=\"2\" points=\"{}\"/>\n", scheme_colour( scheme ),
                      pts );
    s += marks;
    double ly = T + 14 + 20 * legend++;
    s += fmt::format( "<line x1=\"{}\" y1=\"{:.1f}\" x2=\"{}\" y2=\"{:.1f}\" stroke=\"{}\" stroke-width=\"2\"/>\n", L + pw + 12,
                      ly - 4, L + pw + 34, ly - 4, scheme_colour( scheme ) );
    s += text( L + pw + 40, ly, std::string( to_string( scheme ) ), "start" );
  }
  return s + "</svg>\n";
}

std::string compare_plot_svg( const CompareResult& r, const ExperimentConfig& cfg )
{
  constexpr int W = 900, L = 110, R = 20, T = 40, PH = 70, GAP = 18;
  const double pw = W - L - R;

  struct Trace
  {
    std::string label;
    const Waveform* w;
    const char* colour;
  };
  std::vector<Trace> traces;
  if ( !r.runs.empty() )
    for ( const auto& w : r.runs.front().noisy_inputs )
      traces.push_back( { w.name + " (noisy)", &w, "#555555" } );
  for ( const auto& run : r.runs )
    traces.push_back( { fmt::format( "{} out", to_string( run.report.scheme ) ), &run.noisy.nodes.begin()->second,
                        scheme_colour( run.report.scheme ) } );

  const int H = T + static_cast<int>( traces.size() ) * ( PH + GAP ) + 30;
  const double t_end = std::min( 40, cfg.bit_count ) * cfg.bit_period;
  const double vdd = cfg.model.vdd;

  std::string s = header( W, H );
  s += text( W / 2.0, 24, fmt::format( "{} at {} dB SNR, seed {}", r.gate, snr_label( r.snr_db ), r.seed ), "middle",
             " font-size=\"15\"" );
  for ( std::size_t i = 0; i < traces.size(); ++i )
  {
    const double top = T + static_cast<double>( i ) * ( PH + GAP );
    const auto& w = *traces[i].w;
    double lo = 0.0, hi = vdd;
    for ( std::size_t k = 0; k < w.size() && w.time_at( k ) <= t_end; ++k )
    {
      lo = std::min( lo, w[k] );
      hi = std::max( hi, w[k] );
    }
    auto py = [&]( double v ) { return top + ( hi - v ) / ( hi - lo ) * PH; };
    s += fmt::format( "<rect x=\"{}\" y=\"{:.1f}\" width=\"{}\" height=\"{}\" fill=\"none\" stroke=\"#999\"/>\n", L, top, pw,
                      PH );
    s += fmt::format( "<line x1=\"{0}\" y1=\"{1:.1f}\" x2=\"{2}\" y2=\"{1:.1f}\" stroke=\"#ccc\" stroke-dasharray=\"4 3\"/>\n",
                      L, py( cfg.threshold_volts() ), L + pw );
    s += text( L - 8, top + PH / 2.0 + 4, traces[i].label, "end" );
    std::string pts;
    for ( std::size_t k = 0; k < w.size() && w.time_at( k ) <= t_end; ++k )
      pts += fmt::format( "{:.1f},{:.1f} ", L + w.time_at( k ) / t_end * pw, py( w[k] ) );
    s += fmt::format( "<polyline fill=\"none\" stroke=\"{}\" stroke-width=\"1.2\" points=\"{}\"/>\n", traces[i].colour, pts );
  }
  s += text( L + pw / 2, H - 10, fmt::format( "time, 0 to {:.0f} ns", t_end * 1e9 ) );
  return s + "</svg>\n";
}

} // namespace noisegate
