"""测试包
"""
