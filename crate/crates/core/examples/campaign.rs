//! A small verification campaign with a text and a JSON report.

use steenrod_dickson::harness::{parse_theorems, run_campaign, CampaignConfig};
use steenrod_dickson::Result;

fn main() -> Result<()> {
    let cfg = CampaignConfig {
        primes: vec![3, 5],
        theorems: parse_theorems("Thm3.1,Thm4.2,Thm4.4")?,
        max_s: 3,
        ..CampaignConfig::default()
    };
    let outcome = run_campaign(&cfg)?;
    print!("{}", outcome.to_text());
    let json = outcome.to_json();
    println!(
        "JSON report: {} bytes, exit code {}",
        json.len(),
        outcome.exit_code
    );
    Ok(())
}
