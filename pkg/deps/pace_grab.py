#!/usr/bin/env python3
"""
Fetches the public PACE 2017 treewidth instances (exact track) used by the
benchmarks. Only the tiny test graphs are vendored with the repo; everything
else is downloaded here on request.

The instance bundle is an archive of `gr/exact/exNNN.gr.xz` files. They are
unpacked into `deps/pace2017/exNNN.gr`, and an `index.yml` records where and
when they came from.
"""

import argparse
import datetime as dt
import io
import logging
import lzma
import pathlib as pth
import re
import tarfile
from urllib.request import Request, urlopen

from ruamel.yaml.comments import CommentedMap
from ruamel.yaml import YAML as _YAML
yaml = _YAML()

SCRIPT_ROOT = pth.Path(__file__).parent

logging.basicConfig(level=logging.INFO)
logger = logging.getLogger('PACE' if __name__ == '__main__' else __name__)


class DatasetError(Exception):
    pass


class PaceInstances:
    BUNDLE_URL = (R'https://github.com/PACE-challenge/Treewidth-PACE-2017-instances'
                  R'/archive/refs/heads/master.tar.gz')

    HEADERS = {
        'User-Agent': R'acsep-pace-grab',
        'Accept':     R'application/octet-stream, */*',
    }

    # members we keep from the archive
    MEMBER_RE = re.compile(r'(?:^|/)gr/exact/(ex\d{3})\.gr\.xz$')

    DEF_DIR = SCRIPT_ROOT.joinpath('pace2017')

    def __init__(self, out_dir: pth.Path | str = DEF_DIR, url: str = BUNDLE_URL):
        self.out_dir = pth.Path(out_dir)
        self.url = url

    @property
    def index_path(self) -> pth.Path:
        return self.out_dir / 'index.yml'

    def request(self) -> bytes:
        """Downloads the whole bundle into memory."""
        req = Request(self.url, headers=self.HEADERS)
        with urlopen(req) as resp:
            if resp.getcode() != 200:
                raise DatasetError(f'Got HTTP {resp.getcode()} for {self.url}')
            return resp.read()

    def unpack(self, bundle: bytes, names: set[str] | None = None) -> dict[str, int]:
        """Writes the selected exact-track instances as plain `.gr`; returns their sizes."""
        written = {}
        with tarfile.open(fileobj=io.BytesIO(bundle), mode='r:gz') as tar:
            for member in tar:
                match = self.MEMBER_RE.search(member.name)
                if not match or not member.isfile():
                    continue
                name = match.group(1)
                if names and name not in names:
                    continue

                raw = tar.extractfile(member)
                assert raw is not None, f'{member.name} has no payload'
                text = lzma.decompress(raw.read())
                (self.out_dir / f'{name}.gr').write_bytes(text)
                written[name] = len(text)
        return dict(sorted(written.items()))

    def ensure_exists(self, names: set[str] | None = None, *, force: bool = False) -> bool:
        """Downloads instances unless an index is already present. True when nothing was done."""
        if self.index_path.exists() and not force:
            logger.info(f'Using existing instances from {self.out_dir}')
            return True

        self.out_dir.mkdir(parents=True, exist_ok=True)
        logger.info(f'Downloading {self.url}')
        written = self.unpack(self.request(), names)
        if not written:
            raise DatasetError(f'No exact-track instances found in {self.url}')

        index = CommentedMap(written)
        tnow = dt.datetime.now(dt.UTC)
        tnow = tnow.isoformat(' ', timespec='minutes')
        msg = f'updated-at: {tnow}'
        msg += f'\nsource: {self.url}'
        msg += f'\ninstances: {len(index)}'
        index.yaml_set_start_comment(msg)

        with open(self.index_path, 'w') as f:
            yaml.dump(index, stream=f)
        logger.info(f'{len(index)} instances written to {self.out_dir}')
        return False


if __name__ == '__main__':
    parser = argparse.ArgumentParser(description=__doc__,
                                     formatter_class=argparse.RawDescriptionHelpFormatter)
    parser.add_argument('names', nargs='*',
                        help='Instances to keep [i.e. ex069 ex150], all if empty')
    parser.add_argument('--out-dir', type=pth.Path, default=PaceInstances.DEF_DIR)
    parser.add_argument('--url', default=PaceInstances.BUNDLE_URL)
    parser.add_argument('-f', '--force', action='store_true', help='Download even if present')
    args = parser.parse_args()

    grab = PaceInstances(args.out_dir, args.url)
    grab.ensure_exists(set(args.names) or None, force=args.force)
