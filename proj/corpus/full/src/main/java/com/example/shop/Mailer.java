package com.example.shop;

public interface Mailer {
    boolean deliver(String address, String body);
}
