import pathlib
import sys

# make the shared sweep definitions importable regardless of pytest import mode
sys.path.insert(0, str(pathlib.Path(__file__).resolve().parent))
