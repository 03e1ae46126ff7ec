//! Persisting fixed-point graph sets, inspecting the cache and noticing
//! tampering.

use zerolocus::geometry::{CharClassSpec, GeometryConfig};
use zerolocus::localization::{GraphCache, LocalizationEngine};
use zerolocus::series::format_rational;

fn main() -> zerolocus::Result<()> {
    let dir = std::env::temp_dir().join(format!("zerolocus-example-{}", std::process::id()));
    let cache = GraphCache::new(&dir);

    let engine = LocalizationEngine::new().with_cache(cache.clone());
    let n = engine.euler_integral(&GeometryConfig::quintic(), 2, &CharClassSpec::Euler)?;
    println!("N_2 = {}", format_rational(&n));
    for e in cache.inspect()? {
        println!("{}  graphs={:?}  {}", e.path.display(), e.graphs, e.status);
    }

    // Overwrite one file with garbage: verify reports it, the next run
    // regenerates it.
    let victim = &cache.inspect()?[0].path;
    std::fs::write(victim, "{ not json")?;
    println!("verify: {:?}", cache.verify()?);
    let fresh = LocalizationEngine::new().with_cache(cache.clone());
    fresh.euler_integral(&GeometryConfig::quintic(), 2, &CharClassSpec::Euler)?;
    println!("notes: {:?}", fresh.take_notes());
    println!("verify after regeneration: {:?}", cache.verify()?);

    println!("cleared {} files", cache.clear()?);
    std::fs::remove_dir_all(&dir)?;
    Ok(())
}
