#!/usr/bin/env python3
# -*- coding: utf-8 -*-

from kgwall.__main__ import main

if __name__ == "__main__":
    main()
