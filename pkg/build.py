#!/usr/bin/env python3
"""
Build script for Slupecki Lab

Freezes the command-line tool into a single console executable with
PyInstaller. Installed packages outside the whitelist are excluded.

Usage:
    python build.py           - Build the executable
    python build.py --clean   - Clean build artifacts
    python build.py --list    - List packages to exclude
"""

import os
import sys
import shutil
import subprocess
from importlib.metadata import distributions

APP_NAME = 'slupecki'

# Packages the frozen tool needs (whitelist)
REQUIRED_PACKAGES = {
    # Numerics and graphs
    'numpy', 'networkx',

    # System monitoring
    'psutil',

    # PyInstaller internals (needed at build time)
    'pyinstaller', 'altgraph', 'pefile', 'packaging', 'macholib',
    'pyinstaller_hooks_contrib', 'setuptools',
}


def get_installed_packages():
    """Get list of installed pip packages using importlib.metadata"""
    return {dist.metadata['Name'].lower().replace('-', '_') for dist in distributions()}


def get_exclusions():
    """Get list of packages to exclude (everything not in REQUIRED_PACKAGES)"""
    required_lower = {p.lower().replace('-', '_') for p in REQUIRED_PACKAGES}
    return sorted(pkg for pkg in get_installed_packages() if pkg not in required_lower)


def clean_build():
    """Clean build artifacts"""
    for d in ['build', 'dist', '.pytest_cache']:
        if os.path.exists(d):
            print(f"Removing {d}/")
            shutil.rmtree(d)

    spec_file = f'{APP_NAME}.spec'
    if os.path.exists(spec_file):
        print(f"Removing {spec_file}")
        os.remove(spec_file)

    for root, dirs, _ in os.walk('.'):
        if 'examples' in root.split(os.sep):
            continue
        for d in dirs:
            if d == '__pycache__':
                shutil.rmtree(os.path.join(root, d))

    print("Clean complete!")


def list_exclusions():
    """List packages that will be excluded"""
    installed = get_installed_packages()
    exclusions = set(get_exclusions())

    print(f"\nInstalled packages ({len(installed)}):")
    print("-" * 40)
    for pkg in sorted(installed):
        status = "EXCLUDE" if pkg in exclusions else "KEEP"
        print(f"  [{status:7}] {pkg}")

    print(f"\nTotal to exclude: {len(exclusions)} packages")


def build_exe():
    """Build the executable"""
    print("=" * 50)
    print("Slupecki Lab - Build Script")
    print("=" * 50)

    try:
        import PyInstaller
        print(f"PyInstaller version: {PyInstaller.__version__}")
    except ImportError:
        print("ERROR: PyInstaller not installed!")
        print("Run: pip install pyinstaller")
        sys.exit(1)

    print("\n[1/3] Cleaning previous build...")
    clean_build()

    print("\n[2/3] Analyzing packages...")
    exclusions = get_exclusions()
    print(f"       Excluding {len(exclusions)} unnecessary packages")

    print("\n[3/3] Building executable...")
    cmd = [
        sys.executable, '-m', 'PyInstaller',
        f'--name={APP_NAME}',
        '--onefile',
        '--console',
        '--clean',
        '--noconfirm',
    ]
    for pkg in exclusions:
        cmd.append(f'--exclude-module={pkg}')
    # worker processes for --threads are started through multiprocessing
    for module in ['numpy', 'networkx', 'psutil', 'multiprocessing', 'concurrent.futures']:
        cmd.append(f'--hidden-import={module}')
    cmd.append('main.py')

    result = subprocess.run(cmd)
    if result.returncode != 0:
        print("\nERROR: Build failed!")
        sys.exit(1)

    exe_name = f'{APP_NAME}.exe' if sys.platform == 'win32' else APP_NAME
    exe_path = os.path.join('dist', exe_name)
    if not os.path.exists(exe_path):
        print("\nERROR: Executable not found!")
        sys.exit(1)

    size_mb = os.path.getsize(exe_path) / (1024 * 1024)
    print("\n" + "=" * 50)
    print("BUILD COMPLETE!")
    print("=" * 50)
    print(f"Executable: {os.path.abspath(exe_path)}")
    print(f"Size: {size_mb:.1f} MB")


def main():
    if len(sys.argv) > 1:
        arg = sys.argv[1].lower()
        if arg == '--clean':
            clean_build()
        elif arg == '--list':
            list_exclusions()
        elif arg in ['--help', '-h']:
            print(__doc__)
        else:
            print(f"Unknown argument: {arg}")
            print(__doc__)
    else:
        build_exe()


if __name__ == "__main__":
    main()
