"""
Reference Spectra Builder.
Writes the built-in reference media (water, acetonitrile, toluene) to
data/spectra as CSV and JSON files usable with `predict --spectrum`.
"""
import sys
from pathlib import Path

# Add src to path
sys.path.insert(0, str(Path(__file__).parent.parent))

from src.config import SPECTRA_DIR
from src.spectrum.loader import dump_spectrum, load_spectrum
from src.spectrum.reference import REFERENCE_MEDIA, available_media, synthesize_spectrum


def build_medium(medium: str, out_dir: Path) -> list:
    """Synthesize one medium and write it in both formats."""
    spectrum = synthesize_spectrum(medium)
    written = []
    for fmt in ("csv", "json"):
        path = dump_spectrum(spectrum, out_dir / f"{medium}.{fmt}", fmt)
        # Read back through the normal loader so a broken file fails here
        load_spectrum(path)
        written.append(path)
    lines = ", ".join(f"{line.center:g}" for line in REFERENCE_MEDIA[medium])
    print(f"  {medium}: {len(spectrum.shifts)} points, lines at {lines} cm^-1")
    return written


def main():
    """Main build function."""
    print("=" * 50)
    print("Reference Raman Spectra Builder")
    print("=" * 50)

    SPECTRA_DIR.mkdir(parents=True, exist_ok=True)
    media = available_media()
    print(f"\nBuilding {len(media)} media into {SPECTRA_DIR}")

    written = []
    for medium in media:
        try:
            written.extend(build_medium(medium, SPECTRA_DIR))
        except Exception as e:
            print(f"  [WARN] {medium}: {type(e).__name__}: {e}")

    print("\n" + "=" * 50)
    print(f"[OK] Wrote {len(written)} files")
    print("=" * 50)


if __name__ == "__main__":
    main()
