use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};

use super::{parse_bfile, BFileRecord, OeisError, SequenceId};

/// Environment variable that overrides the default cache directory.
pub const CACHE_DIR_ENV: &str = "BLOCKSUM_CACHE_DIR";

/// Source of raw b-file bytes for cache misses.
pub trait Fetcher {
    fn fetch(&self, url: &str) -> Result<Vec<u8>, OeisError>;
}

/// Fails every request; used when the network must not be touched.
#[derive(Debug, Clone, Copy, Default)]
pub struct OfflineFetcher;

impl Fetcher for OfflineFetcher {
    fn fetch(&self, url: &str) -> Result<Vec<u8>, OeisError> {
        Err(OeisError::NetworkUnavailable { url: url.to_string(), reason: "offline mode".into() })
    }
}

#[cfg(feature = "http")]
#[derive(Debug, Clone, Copy, Default)]
pub struct HttpFetcher;

#[cfg(feature = "http")]
impl Fetcher for HttpFetcher {
    fn fetch(&self, url: &str) -> Result<Vec<u8>, OeisError> {
        let unavailable = |e: ureq::Error| OeisError::NetworkUnavailable {
            url: url.to_string(),
            reason: e.to_string(),
        };
        log::info!("GET {url}");
        let mut response = ureq::get(url).call().map_err(unavailable)?;
        response
            .body_mut()
            .with_config()
            .limit(256 * 1024 * 1024)
            .read_to_vec()
            .map_err(unavailable)
    }
}

/// `$BLOCKSUM_CACHE_DIR`, else the user cache directory, else a
/// `.blocksum-cache` directory under the working directory.
pub fn default_cache_dir() -> PathBuf {
    if let Some(dir) = std::env::var_os(CACHE_DIR_ENV).filter(|d| !d.is_empty()) {
        return PathBuf::from(dir);
    }
    if let Some(dir) = std::env::var_os("XDG_CACHE_HOME").filter(|d| !d.is_empty()) {
        return PathBuf::from(dir).join("blocksum");
    }
    if let Some(home) = std::env::var_os("HOME").filter(|d| !d.is_empty()) {
        return PathBuf::from(home).join(".cache").join("blocksum");
    }
    PathBuf::from(".blocksum-cache")
}

fn cache_path(cache_dir: &Path, id: SequenceId) -> PathBuf {
    cache_dir.join(format!("{id}.txt"))
}

fn io_error(path: &Path) -> impl FnOnce(io::Error) -> OeisError + '_ {
    move |source| OeisError::Io { path: path.to_path_buf(), source }
}

/// Returns the sequence's b-file records, reading `cache_dir/<id>.txt` when
/// present and otherwise fetching and caching the raw upstream bytes.
///
/// Cache writes go through a temporary file in the same directory and an
/// atomic rename, so concurrent fetches of one id never leave a torn file.
pub fn fetch_sequence(
    id: SequenceId,
    cache_dir: &Path,
    fetcher: &dyn Fetcher,
) -> Result<Vec<BFileRecord>, OeisError> {
    let path = cache_path(cache_dir, id);
    match fs::read(&path) {
        Ok(bytes) => {
            log::debug!("cache hit for {id} at {}", path.display());
            return Ok(parse_bfile(&bytes)?);
        }
        Err(e) if e.kind() == io::ErrorKind::NotFound => {}
        Err(e) => return Err(io_error(&path)(e)),
    }

    let bytes = fetcher.fetch(&id.bfile_url())?;
    // Validate before caching so a bad download is never persisted.
    let records = parse_bfile(&bytes)?;

    fs::create_dir_all(cache_dir).map_err(io_error(cache_dir))?;
    let mut tmp = tempfile::NamedTempFile::new_in(cache_dir).map_err(io_error(cache_dir))?;
    tmp.write_all(&bytes).map_err(io_error(tmp.path()))?;
    tmp.as_file().sync_all().map_err(io_error(&path))?;
    tmp.persist(&path).map_err(|e| io_error(&path)(e.error))?;
    Ok(records)
}
